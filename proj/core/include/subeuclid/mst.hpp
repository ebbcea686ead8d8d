#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Exact Euclidean minimum spanning tree, dense Prim, O(n^2).
std::pair<SpanningTree, double> mst(const PointSet& ps);

/// Count of vertices per degree; sum of k * count is 2(n-1).
std::map<int, int> mst_degree_histogram(const SpanningTree& tree);

struct MstKResult {
  SpanningTree tree;
  double length = 0;
  bool exact = false;
};

/// Minimum spanning tree with maximum degree <= k (k >= 2). Exact for
/// k == 2 via a Hamiltonian-path dynamic program (n <= 18) and for small n
/// via branch-and-bound on edge inclusion/exclusion with a spanning-tree
/// relaxation; otherwise an edge-exchange local search seeded from the MST
/// with degree repair (always feasible, flagged inexact). Length is never
/// below the unconstrained MST.
MstKResult mst_k(const PointSet& ps, int max_degree);

}  // namespace subeuclid
