#pragma once

#include <vector>

namespace subeuclid {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double cost = 0;
};

struct PerfectMatchingResult {
  bool perfect = false;
  std::vector<int> mate;      // size n; -1 where unmatched
  double total_cost = 0;      // sum of original costs over matched pairs
  std::vector<double> dual;   // min-convention vertex duals, size n
};

/// Exact minimum-weight perfect matching on an explicit edge list over
/// vertices 0..n-1 (general graphs; absent pairs cannot be matched).
/// Primal-dual blossom algorithm on a dense adjacency structure, O(n^3)
/// in practice. When the graph has no perfect matching, `perfect` is
/// false and `mate` holds the partial matching found.
///
/// The returned duals satisfy dual[u] + dual[v] <= cost for every ABSENT
/// pair trivially extendable (no blossom constraint applies), which is
/// what sparse-candidate pricing needs. For present edges inside final
/// blossoms the pairwise inequality may be compensated by blossom duals
/// that are not exported.
PerfectMatchingResult min_weight_perfect_matching(int n,
                                                  const std::vector<WeightedEdge>& edges);

}  // namespace subeuclid
