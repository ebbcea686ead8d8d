#pragma once

#include <utility>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Brute-force exact solvers for tiny instances. These are the ground truth
/// for solver equivalence tests; size caps are hard errors rather than
/// silent fallbacks so tests cannot accidentally run heuristics. Ties are
/// broken toward the lexicographically smallest canonical (sorted) edge
/// list, which makes outputs reproducible on symmetric inputs.

/// Globally minimum tour. Permutation enumeration for n <= 10, bitmask
/// dynamic program for 11 <= n <= 18. Requires 3 <= n <= 18.
std::pair<Tour, double> tsp_oracle(const PointSet& ps);

/// Minimum perfect matching by enumeration; n even, n <= 12.
std::pair<Matching, double> matching_oracle(const PointSet& ps);

/// Minimum 2-factor with all cycles of length >= g by enumerating cycle
/// partitions; max(g,3) <= n <= 10. Throws on infeasible girth.
std::pair<TwoFactor, double> two_factor_oracle(const PointSet& ps, int girth);

/// Minimum spanning tree with max degree <= k over all n^(n-2) labeled
/// trees; 2 <= k, n <= 8.
std::pair<SpanningTree, double> mst_k_oracle(const PointSet& ps, int max_degree);

/// Minimum H-factor over all groupings into floor(n/|H|) disjoint subsets
/// and all embeddings; n <= 9, |H| <= 4.
std::pair<HFactor, double> h_factor_oracle(const PointSet& ps, const HPattern& pattern);

/// Minimum-weight cut of the weighted support graph over all proper
/// nonempty vertex subsets; n <= 10.
std::pair<std::vector<int>, double> min_cut_oracle(const FractionalSolution& weights);

namespace detail {
// Both tsp routes are exposed so tests can check they agree exactly.
std::pair<Tour, double> tsp_permutation(const PointSet& ps);
std::pair<Tour, double> tsp_bitmask(const PointSet& ps);
}  // namespace detail

}  // namespace subeuclid
