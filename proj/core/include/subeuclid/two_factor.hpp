#pragma once

#include <cstdint>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

struct TwoFactorResult {
  TwoFactor factor;
  double length = 0;
};

/// Exact minimum 2-factor (cycles >= 3) honoring forced edges I and
/// forbidden edges O, by reduction to minimum-weight perfect matching on a
/// vertex-split gadget graph. Candidate edges are restricted to nearest
/// neighbors and certified exact by dual pricing, re-solving with any
/// priced-in edges until the reduced costs prove optimality.
/// Throws InfeasibleError (with the violating vertex) when no constrained
/// 2-factor exists.
TwoFactorResult two_factor(const PointSet& ps, const Constraints& cons = {});

struct TwoFactorGirthResult {
  TwoFactor factor;
  double length = 0;
  bool optimal = false;
  double best_bound = 0;          // valid lower bound even on budget exhaustion
  std::uint64_t nodes = 0;        // relaxation solves performed
};

/// Exact minimum 2-factor with every cycle of length >= g, by
/// branch-and-bound over the plain 2-factor relaxation. Branches kill the
/// shortest violating cycle through sequential inclusion/exclusion children
/// over its edges. On node-budget exhaustion the best feasible solution
/// found (if any) is returned with optimal == false.
TwoFactorGirthResult two_factor_girth(const PointSet& ps, int girth,
                                      const Constraints& cons = {},
                                      std::uint64_t node_budget = 1000000);

}  // namespace subeuclid
