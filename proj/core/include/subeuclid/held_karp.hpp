#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

struct CutCertificate {
  std::vector<int> subset;       // proper nonempty vertex set S
  double crossing_weight = 0;    // recomputed total weight leaving S
};

/// Global minimum cut of the weighted support graph (Stoer-Wagner with
/// vertex merging, O(n^3)). Disconnected support yields a zero-weight cut
/// immediately. Requires n >= 2.
CutCertificate stoer_wagner(const FractionalSolution& weights);

struct FeasibilityReport {
  bool feasible = false;
  std::string violation;             // empty when feasible
  int vertex = -1;                   // first degree violator, if any
  std::optional<CutCertificate> cut; // violated cut, if any
  explicit operator bool() const { return feasible; }
};

/// True iff every vertex degree-weight is 2 (+-1e-7) and no cut of weight
/// below 2 - 1e-7 exists; i.e. the point satisfies the tour LP.
FeasibilityReport hk_feasible(const FractionalSolution& sol);

struct HkResult {
  double value = 0;
  FractionalSolution solution;
  int cuts_added = 0;
  bool converged = true;  // false when the cut-iteration cap was reached;
                          // the value is still a valid lower bound
};

/// Optimal value of the tour LP (degree-2 equalities, 0 <= x <= 1 with
/// forced/banned edges pinned, all cut constraints) via cutting planes:
/// solve, separate with the global min cut, add the violated constraint,
/// repeat until every cut has weight >= 2 - 1e-7. The LP warm-starts from
/// the previous basis after each added cut. Throws InfeasibleError when the
/// constraints admit no LP point. Requires 3 <= n <= 300.
HkResult hk_value(const PointSet& ps, const Constraints& cons = {});

/// Downweights all edges by (1 - 1/n), adds vertices y = n and z = n+1
/// joined by weight 1, and joins each of y,z to all old vertices with
/// weight 1/n. Feasibility is preserved. Throws on infeasible input.
FractionalSolution hk_extend_edge_pair(const FractionalSolution& sol);

/// Downweights by (1 - k/n) and adds k vertices n..n+k-1, each joined to
/// all old vertices with weight 2/n. Requires k < n/2 and feasible input.
FractionalSolution hk_extend_independent(const FractionalSolution& sol, int k);

/// Designated unit edges of one block: {x1,x2} is deleted for every block
/// after the first, {x3,x4} for every block before the last; block i's
/// x3/x4 are then joined to block i+1's x1/x2 with weight 1.
struct PatchInterface {
  std::array<int, 4> terminals{};  // local vertex ids x1, x2, x3, x4
};

/// Splices feasible blocks into one feasible solution on the disjoint
/// union (blocks keep their vertex order; ids are offset block by block).
/// Throws std::invalid_argument when a designated edge does not carry
/// weight 1 within 1e-9.
FractionalSolution hk_patch(const std::vector<FractionalSolution>& blocks,
                            const std::vector<PatchInterface>& interfaces);

enum class RingPassMode { OnePass, TwoPass };

/// Concentric-ring point set: k inner points on the unit circle, 2k outer
/// points at radius 4, and the two gap points (+-2, 0). Requires k >= 12
/// divisible by 4.
PointSet build_ring_points(int k);

struct RingConstruction {
  PointSet points;          // ring vertices then entry vertices
  FractionalSolution fractional;
  std::vector<int> entries; // entry vertex ids
  int ring_size = 0;        // 3k + 2
};

/// The fractional tour-LP point carried by the ring set: weight-1/2
/// triangles at the gap vertices and at the entry triples, weight-1 arcs
/// elsewhere, entry points joined in and closed off so the standalone
/// solution is feasible. Its cost over ring-internal edges converges to
/// 10*pi + 6 as k grows.
RingConstruction build_ring_fractional(RingPassMode mode, int k);

/// Weighted length over edges with both endpoints among the ring vertices.
double ring_internal_cost(const RingConstruction& rc);

}  // namespace subeuclid
