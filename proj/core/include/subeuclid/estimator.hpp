#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subeuclid/point_set.hpp"
#include "subeuclid/structures.hpp"

namespace subeuclid {

/// Parametrized functional selector for experiments.
struct Functional {
  std::string name;  // tsp | mst | mst_k | mm2 | tf | tf_g | hk | hf
  int k = 3;         // mst_k
  int g = 4;         // tf_g
  HPattern pattern = HPattern::single_edge();  // hf

  std::string id() const;
};

struct FunctionalValue {
  double length = 0;
  bool exact = true;
};

/// Length of the functional on a concrete instance; `exact` reports whether
/// the solve was certified optimal (heuristic modes flag false). Throws
/// std::invalid_argument when the size is unsupported in exact mode.
FunctionalValue evaluate_functional(const Functional& f, const PointSet& ps);

struct BetaEstimate {
  std::string functional;
  int d = 0;
  int n = 0;
  int trials = 0;
  double mean = 0;   // average of L / n^((d-1)/d)
  double ci_lo = 0;  // bootstrap 95% interval (2000 resamples)
  double ci_hi = 0;
  bool exact_mode = true;
  std::vector<double> values;  // per-trial normalized lengths, trial order
};

/// Monte-Carlo estimate of the scaling constant of a functional from
/// `trials` seeded instances. Deterministic for a given seed regardless of
/// the worker count.
BetaEstimate estimate_beta(const Functional& f, int d, int n, int trials,
                           std::uint64_t seed, int jobs = 1);

struct BetaExtrapolation {
  std::vector<BetaEstimate> grid;
  double intercept = 0;  // fitted value at n -> infinity
  double slope = 0;      // coefficient of n^(-1/d)
  bool heuristic = true; // the fit carries no guarantee; always true
};

/// Optional finite-size extrapolation: least-squares fit of the per-n means
/// against n^(-1/d) over the given grid. Heuristic by construction.
BetaExtrapolation extrapolate_beta(const Functional& f, int d,
                                   const std::vector<int>& sizes, int trials,
                                   std::uint64_t seed, int jobs = 1);

struct SeparationPair {
  std::string lower;  // functional expected to be <= upper per instance
  std::string upper;
  double mean_gap = 0;  // mean(upper - lower)
  double gap_ci_lo = 0;
  double gap_ci_hi = 0;
  int violations = 0;  // instances with lower > upper + 1e-6
};

struct SeparationReport {
  int d = 0, n = 0, trials = 0;
  std::vector<SeparationPair> pairs;
};

/// Per-instance ordering checks plus mean gaps with bootstrap CIs:
/// tf_g <= tf_{g+1} <= ... <= tf_n = tsp, mst <= mst_5 <= ... <= mst_2,
/// 2*mm <= tsp (even n), hk <= tsp + 1e-6, and the headline (tf_3, tsp).
SeparationReport separation_suite(int d, int n, int trials, std::uint64_t seed,
                                  int jobs = 1);

struct AlphaRow {
  double mean = 0;
  double ci_lo = 0;
  double ci_hi = 0;
};

struct AlphaReport {
  int d = 0, n = 0, trials = 0;
  std::map<int, AlphaRow> fraction_by_degree;
  int max_degree = 0;
};

/// Mean fraction of MST vertices of each degree across seeded trials.
AlphaReport mst_alpha(int d, int n, int trials, std::uint64_t seed, int jobs = 1);

/// Percentile bootstrap 95% interval of the mean (2000 resamples), widened
/// to contain the point estimate. Deterministic given the seed.
std::pair<double, double> bootstrap_ci(const std::vector<double>& values,
                                       std::uint64_t seed);

}  // namespace subeuclid
