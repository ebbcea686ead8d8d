#pragma once

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

struct HFactorResult {
  HFactor factor;
  double length = 0;
  bool exact = false;
};

/// Minimum-length H-factor covering floor(n/|H|)*|H| points (the omitted
/// set is chosen cheapest). Exact via a set-partition dynamic program for
/// n <= 20; greedy nearest-group heuristic above that, flagged inexact.
HFactorResult h_factor(const PointSet& ps, const HPattern& pattern);

}  // namespace subeuclid
