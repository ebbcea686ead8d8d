#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Exact saving of replacing the path p-q-r-s by the single edge p-s:
/// |pq| + |qr| + |rs| - |ps|. Nonnegative by the triangle inequality, and
/// bounded below by Delta^(1/3)/4 - 2*delta when the legs are long (>=
/// Delta), the middle is short (<= delta) and some leg angle is >=
/// Delta^(-1/3).
double shortcut_saving(std::span<const double> p, std::span<const double> q,
                       std::span<const double> r, std::span<const double> s);

struct RepairFourResult {
  // Pairing over the inputs indexed 0:p1, 1:s1, 2:p2, 3:s2.
  std::array<std::pair<int, int>, 2> pairing;
  double total_length = 0;
};

/// Given four far endpoints whose partner endpoints crowd within `delta`
/// of `center`, picks one of the three pairings of {p1,p2,s1,s2} whose
/// total length is at most sum(|center->point|) + 4*delta - Delta/2 where
/// Delta = min distance to center. Prefers a pairing containing an angle
/// <= pi/2 (one always exists in the plane). Throws when a point sits on
/// the center or delta < 0.
RepairFourResult repair_four(std::span<const double> p1, std::span<const double> s1,
                             std::span<const double> p2, std::span<const double> s2,
                             std::span<const double> center, double delta);

/// Merges the two cycles containing x and y into one by removing one edge
/// at each of x and y and adding (x,y) plus the cheapest reconnection; the
/// length increase is at most 2*dist(x,y). Other cycles are untouched.
/// Throws std::invalid_argument when x and y share a cycle.
TwoFactor merge_cycles(const PointSet& ps, const TwoFactor& f, int x, int y);

struct PatchResult {
  Tour tour;
  std::vector<double> merge_costs;  // per-merge length increase, for audit
};

/// Greedy patching of a covering 2-factor into a Hamiltonian tour: merge
/// the two cycles joined by the closest inter-cycle vertex pair until one
/// cycle remains. For a minimum 2-factor the result can never be shorter
/// than the input (any tour is itself a 2-factor).
PatchResult patch_to_tour(const PointSet& ps, const TwoFactor& f);

/// All maximal groups of exactly m points with diameter <= 2*eps whose
/// distance to every other point exceeds isolation D ( > eps). Groups are
/// connected components of the distance-<=D graph, scanned with a grid
/// hash of cell size D; output is deterministic (sorted by least vertex).
std::vector<std::vector<int>> find_isolated_clusters(const PointSet& ps, int m,
                                                     double eps, double isolation);

}  // namespace subeuclid
