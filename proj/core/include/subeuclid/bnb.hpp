#pragma once

#include <cstdint>
#include <vector>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

enum class BoundKind { TwoFactorBound, TwoFactorGirthBound, HeldKarpBound };
enum class IncumbentMode { PatchAndImprove, Oracle };

struct BnbOptions {
  BoundKind bound = BoundKind::TwoFactorBound;
  int girth = 4;  // used by TwoFactorGirthBound
  IncumbentMode incumbent = IncumbentMode::PatchAndImprove;
  std::uint64_t node_budget = 2000000;
};

struct BnbStats {
  std::uint64_t nodes_expanded = 0;  // nodes whose bound was evaluated
  std::uint64_t leaves = 0;          // closed, pruned or infeasible nodes
  std::uint64_t pruned_nodes = 0;
  std::uint64_t bound_calls = 0;
  int max_depth = 0;
  double wall_time = 0;  // seconds
};

struct BnbResult {
  Tour tour;
  double length = 0;
  BnbStats stats;
  bool optimal = false;  // false on node-budget exhaustion
};

/// Exact TSP by branch-and-bound with a pluggable lower bound. Nodes carry
/// inclusion/exclusion edge sets; 2-factor style bounds branch over the
/// edges of the shortest non-Hamiltonian cycle with sequential
/// inclusion/exclusion children, and the LP bound branches on the edge
/// whose weight is closest to 1/2 (include-first). Nodes are explored
/// best-bound-first with a deeper-node tiebreak. The incumbent comes from
/// patching the node's bound structure into a tour and 2-opting it, or
/// from the exact oracle at the root when requested (n <= 14).
BnbResult solve_bnb(const PointSet& ps, const BnbOptions& options = {});

/// Children constraints of a 2-factor-bounded node branching on `cycle`.
/// The union of the children's tour sets equals the parent's.
std::vector<Constraints> two_factor_branch_children(const std::vector<int>& cycle,
                                                    const Constraints& parent);

/// Include/exclude children for LP-bound branching on edge e.
std::vector<Constraints> lp_branch_children(Edge e, const Constraints& parent);

struct GrowthRow {
  int n = 0;
  int trial = 0;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t pruned = 0;
  bool optimal = false;
  double wall_time = 0;
};

/// Seeded branch-and-bound tree-size experiment: one row per (n, trial).
/// Budget exhaustion is recorded per trial, never fatal. `girth` applies
/// only to the girth-constrained bound.
std::vector<GrowthRow> growth_experiment(const std::vector<int>& sizes, int trials,
                                         BoundKind bound, std::uint64_t seed,
                                         std::uint64_t node_budget = 2000000,
                                         int jobs = 1, int girth = 4);

}  // namespace subeuclid
