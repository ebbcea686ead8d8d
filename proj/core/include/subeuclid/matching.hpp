#pragma once

#include <utility>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Exact minimum-weight matching of floor(n/2) edges on the complete
/// Euclidean graph (blossom primal-dual, O(n^3)). For odd n the omitted
/// vertex is chosen optimally via a zero-cost dummy vertex.
std::pair<Matching, double> min_matching(const PointSet& ps);

}  // namespace subeuclid
