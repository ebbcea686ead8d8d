#pragma once

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

double tour_length(const PointSet& ps, const Tour& t);

/// 2-opt local optimum of the given tour: repeatedly reverses segments
/// while doing so shortens the tour by more than 1e-12. Never lengthens.
Tour tour_2opt(const PointSet& ps, const Tour& t);

/// Heuristic tour built by taking support edges of a fractional solution in
/// descending weight (keeping degrees <= 2 and avoiding premature cycles)
/// and stitching the leftover fragments greedily. Used for incumbents.
Tour greedy_tour_from_fractional(const PointSet& ps, const FractionalSolution& frac);

/// Nearest-neighbor construction from vertex 0.
Tour nearest_neighbor_tour(const PointSet& ps);

}  // namespace subeuclid
