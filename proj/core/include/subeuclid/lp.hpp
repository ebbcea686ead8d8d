#pragma once

#include <limits>
#include <vector>

namespace subeuclid {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class RowSense { Eq, Ge, Le };

struct LpTerm {
  int var = 0;
  double coef = 0;
};

struct LpRow {
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::Eq;
  double rhs = 0;
};

struct LpProblem {
  int num_vars = 0;
  std::vector<double> cost;
  std::vector<LpRow> rows;
  std::vector<double> lower;  // -inf allowed
  std::vector<double> upper;  // +inf allowed
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0;
  std::vector<double> x;
};

constexpr double kLpInf = std::numeric_limits<double>::infinity();

/// Minimizes cost over the rows and bounds. Bounded-variable revised
/// simplex, dense basis inverse; suited to desk-scale instances.
LpSolution lp_min(const LpProblem& problem);

/// Incremental simplex used by the cutting-plane loop: rows can be appended
/// between solves and the previous basis is reused (the new row enters the
/// basis through its own artificial, so a re-solve is typically a handful
/// of pivots).
class IncrementalSimplex {
 public:
  /// Bounds and costs are fixed at construction; rows accumulate.
  IncrementalSimplex(std::vector<double> cost, std::vector<double> lower,
                     std::vector<double> upper);

  void add_row(const LpRow& row);
  void set_bounds(int var, double lo, double hi);

  LpSolution solve();

  int num_rows() const { return static_cast<int>(rows_.size()); }

 private:
  friend class SimplexImpl;
  std::vector<double> cost_, lower_, upper_;
  std::vector<LpRow> rows_;
  // Persisted basis state between solves.
  std::vector<int> basis_;
  std::vector<signed char> state_;  // indexed by extended column
  std::vector<signed char> art_sign_;
  bool have_basis_ = false;
};

}  // namespace subeuclid
