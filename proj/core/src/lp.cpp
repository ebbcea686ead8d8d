#include "subeuclid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subeuclid {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr signed char kAtLower = 0;
constexpr signed char kAtUpper = 1;
constexpr signed char kBasic = 2;

struct SparseCol {
  std::vector<std::pair<int, double>> entries;  // (row, coef)
};

}  // namespace

// One solve over the accumulated rows; owns the dense basis inverse.
class SimplexImpl {
 public:
  explicit SimplexImpl(IncrementalSimplex& host) : host_(host) {
    nv_ = static_cast<int>(host.cost_.size());
    m_ = static_cast<int>(host.rows_.size());
    ncols_ = nv_ + 2 * m_;
    build_columns();
    lo_.assign(ncols_, 0.0);
    hi_.assign(ncols_, kLpInf);
    for (int j = 0; j < nv_; ++j) {
      lo_[j] = host.lower_[j];
      hi_[j] = host.upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      if (host.rows_[i].sense == RowSense::Eq) hi_[slack_col(i)] = 0.0;
      // artificial: [0, inf) in phase 1, pinned to 0 afterwards
    }
    rhs_.resize(m_);
    for (int i = 0; i < m_; ++i) rhs_[i] = host.rows_[i].rhs;
  }

  LpSolution run() {
    sync_state();
    if (!factorize()) {
      reset_basis();
      if (!factorize())
        throw std::runtime_error("simplex: singular artificial basis");
    }
    compute_x();
    fix_artificial_signs();
    if (!basics_within_bounds()) {
      reset_basis();
      if (!factorize())
        throw std::runtime_error("simplex: singular artificial basis");
      compute_x();
      fix_artificial_signs();
    }

    LpSolution sol;
    // Phase 1: drive artificials to zero.
    if (artificial_mass() > kFeasTol) {
      std::vector<double> phase1(ncols_, 0.0);
      for (int i = 0; i < m_; ++i) phase1[art_col(i)] = 1.0;
      LpStatus st = primal(phase1);
      if (st == LpStatus::IterationLimit) {
        sol.status = st;
        return sol;
      }
      if (artificial_mass() > 1e-7) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
    }
    // Phase 2: artificials pinned at zero.
    for (int i = 0; i < m_; ++i) hi_[art_col(i)] = 0.0;
    std::vector<double> cost(ncols_, 0.0);
    for (int j = 0; j < nv_; ++j) cost[j] = host_.cost_[j];
    LpStatus st = primal(cost);
    sol.status = st;
    if (st != LpStatus::Optimal) return sol;
    sol.x = extract_x();
    sol.value = 0;
    for (int j = 0; j < nv_; ++j) sol.value += host_.cost_[j] * sol.x[j];
    save_state();
    return sol;
  }

 private:
  int slack_col(int row) const { return nv_ + 2 * row; }
  int art_col(int row) const { return nv_ + 2 * row + 1; }

  void build_columns() {
    cols_.assign(ncols_, {});
    for (int i = 0; i < m_; ++i) {
      for (const LpTerm& t : host_.rows_[i].terms)
        cols_[t.var].entries.push_back({i, t.coef});
      const double sc = host_.rows_[i].sense == RowSense::Ge ? -1.0 : 1.0;
      cols_[slack_col(i)].entries.push_back({i, sc});
      cols_[art_col(i)].entries.push_back({i, 1.0});  // sign applied below
    }
    if (static_cast<int>(host_.art_sign_.size()) < m_)
      host_.art_sign_.resize(m_, 1);
    for (int i = 0; i < m_; ++i)
      cols_[art_col(i)].entries[0].second = host_.art_sign_[i];
  }

  void sync_state() {
    std::vector<signed char> prev = host_.state_;
    prev.resize(ncols_, kAtLower);
    basis_ = host_.basis_;
    // New rows enter through their artificials.
    for (int i = static_cast<int>(basis_.size()); i < m_; ++i)
      basis_.push_back(art_col(i));
    std::vector<char> in_basis(ncols_, 0);
    for (int b : basis_) in_basis[b] = 1;
    state_.assign(ncols_, kAtLower);
    for (int j = 0; j < ncols_; ++j) {
      if (in_basis[j]) {
        state_[j] = kBasic;
      } else if (prev[j] == kAtUpper && std::isfinite(hi_[j])) {
        state_[j] = kAtUpper;
      } else if (!std::isfinite(lo_[j]) && std::isfinite(hi_[j])) {
        state_[j] = kAtUpper;
      }
    }
  }

  double nb_value(int j) const {
    if (state_[j] == kAtUpper) return hi_[j];
    return std::isfinite(lo_[j]) ? lo_[j] : 0.0;
  }

  void reset_basis() {
    basis_.clear();
    for (int i = 0; i < m_; ++i) basis_.push_back(art_col(i));
    for (int j = 0; j < ncols_; ++j) {
      if (!std::isfinite(lo_[j]) && std::isfinite(hi_[j]))
        state_[j] = kAtUpper;
      else
        state_[j] = kAtLower;
    }
    for (int i = 0; i < m_; ++i) state_[art_col(i)] = kBasic;
  }

  bool factorize() {
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    std::vector<double> mat(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int k = 0; k < m_; ++k)
      for (auto [r, a] : cols_[basis_[k]].entries) mat[r * m_ + k] = a;
    for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    // Gauss-Jordan with partial pivoting.
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      for (int r = col + 1; r < m_; ++r)
        if (std::fabs(mat[r * m_ + col]) > std::fabs(mat[piv * m_ + col])) piv = r;
      if (std::fabs(mat[piv * m_ + col]) < 1e-11) return false;
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(mat[piv * m_ + k], mat[col * m_ + k]);
          std::swap(binv_[piv * m_ + k], binv_[col * m_ + k]);
        }
      }
      const double inv = 1.0 / mat[col * m_ + col];
      for (int k = 0; k < m_; ++k) {
        mat[col * m_ + k] *= inv;
        binv_[col * m_ + k] *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = mat[r * m_ + col];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          mat[r * m_ + k] -= f * mat[col * m_ + k];
          binv_[r * m_ + k] -= f * binv_[col * m_ + k];
        }
      }
    }
    return true;
  }

  void compute_x() {
    std::vector<double> r = rhs_;
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kBasic) continue;
      const double v = nb_value(j);
      if (v == 0.0) continue;
      for (auto [row, a] : cols_[j].entries) r[row] -= a * v;
    }
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double s = 0;
      for (int k = 0; k < m_; ++k) s += binv_[i * m_ + k] * r[k];
      xb_[i] = s;
    }
  }

  void fix_artificial_signs() {
    bool flipped = false;
    for (int i = 0; i < m_; ++i) {
      const int pos = find_basic(art_col(i));
      if (pos < 0) continue;
      if (xb_[pos] < -kFeasTol) {
        host_.art_sign_[i] = -host_.art_sign_[i];
        cols_[art_col(i)].entries[0].second = host_.art_sign_[i];
        flipped = true;
      }
    }
    if (flipped) {
      if (!factorize())
        throw std::runtime_error("simplex: refactorization failed after sign flip");
      compute_x();
    }
  }

  int find_basic(int col) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == col) return i;
    return -1;
  }

  bool basics_within_bounds() const {
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (xb_[i] < lo_[b] - 1e-7 || xb_[i] > hi_[b] + 1e-7) return false;
    }
    return true;
  }

  double artificial_mass() const {
    double s = 0;
    for (int i = 0; i < m_; ++i) {
      const int pos = find_basic(art_col(i));
      if (pos >= 0) s += std::fabs(xb_[pos]);
    }
    return s;
  }

  std::vector<double> extract_x() const {
    std::vector<double> x(nv_);
    for (int j = 0; j < nv_; ++j) x[j] = nb_value_or_basic(j);
    return x;
  }

  double nb_value_or_basic(int j) const {
    if (state_[j] == kBasic) {
      const int pos = find_basic(j);
      return pos >= 0 ? xb_[pos] : 0.0;
    }
    return nb_value(j);
  }

  void save_state() {
    host_.basis_ = basis_;
    host_.state_ = state_;
    host_.have_basis_ = true;
  }

  LpStatus primal(const std::vector<double>& cost) {
    const long max_iter = 2000L + 200L * (m_ + 64);
    long stall = 0;
    bool bland = false;
    std::vector<double> y(m_), w(m_);
    for (long iter = 0; iter < max_iter; ++iter) {
      // Duals y = c_B * Binv.
      for (int i = 0; i < m_; ++i) {
        double s = 0;
        for (int k = 0; k < m_; ++k) s += cost[basis_[k]] * binv_[k * m_ + i];
        y[i] = s;
      }
      // Pricing.
      int enter = -1, dir = 0;
      double best = kDualTol;
      for (int j = 0; j < ncols_; ++j) {
        if (state_[j] == kBasic || lo_[j] == hi_[j]) continue;
        double d = cost[j];
        for (auto [row, a] : cols_[j].entries) d -= y[row] * a;
        int cand_dir = 0;
        if (state_[j] == kAtLower && d < -kDualTol)
          cand_dir = 1;
        else if (state_[j] == kAtUpper && d > kDualTol)
          cand_dir = -1;
        else if (!std::isfinite(lo_[j]) && !std::isfinite(hi_[j]) &&
                 std::fabs(d) > kDualTol)
          cand_dir = d < 0 ? 1 : -1;
        if (!cand_dir) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // Column ftran: w = Binv * A_enter.
      std::fill(w.begin(), w.end(), 0.0);
      for (auto [row, a] : cols_[enter].entries)
        for (int i = 0; i < m_; ++i) w[i] += binv_[i * m_ + row] * a;

      // Ratio test with bound flip.
      double t = kLpInf;
      if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter]))
        t = hi_[enter] - lo_[enter];
      int leave = -1;
      double leave_dx = 0;
      for (int i = 0; i < m_; ++i) {
        const double dx = -dir * w[i];
        if (std::fabs(dx) < 1e-11) continue;
        const int b = basis_[i];
        double ti = kLpInf;
        if (dx < 0 && std::isfinite(lo_[b])) ti = (lo_[b] - xb_[i]) / dx;
        else if (dx > 0 && std::isfinite(hi_[b])) ti = (hi_[b] - xb_[i]) / dx;
        if (ti < t - 1e-12 ||
            (ti < t + 1e-12 && leave >= 0 &&
             std::fabs(w[i]) > std::fabs(w[leave]))) {
          t = ti;
          leave = i;
          leave_dx = dx;
        }
      }
      if (!std::isfinite(t)) return LpStatus::Unbounded;
      t = std::max(t, 0.0);

      if (t < 1e-11) {
        if (++stall > 2L * m_ + 20) bland = true;
      } else {
        stall = 0;
        bland = false;
      }

      if (leave < 0) {
        // Bound flip of the entering variable.
        for (int i = 0; i < m_; ++i) xb_[i] += -dir * w[i] * t;
        state_[enter] = state_[enter] == kAtLower ? kAtUpper : kAtLower;
      } else {
        for (int i = 0; i < m_; ++i) xb_[i] += -dir * w[i] * t;
        const int b_out = basis_[leave];
        state_[b_out] = leave_dx < 0 ? kAtLower : kAtUpper;
        if (!std::isfinite(hi_[b_out]) && state_[b_out] == kAtUpper)
          state_[b_out] = kAtLower;
        xb_[leave] = nb_value(enter) + dir * t;
        basis_[leave] = enter;
        state_[enter] = kBasic;
        // Pivot update of the dense inverse.
        const double piv = w[leave];
        const double invp = 1.0 / piv;
        for (int k = 0; k < m_; ++k) binv_[leave * m_ + k] *= invp;
        for (int i = 0; i < m_; ++i) {
          if (i == leave) continue;
          const double f = w[i];
          if (f == 0.0) continue;
          for (int k = 0; k < m_; ++k)
            binv_[i * m_ + k] -= f * binv_[leave * m_ + k];
        }
        if (++pivots_ % 100 == 0) {
          if (!factorize()) return LpStatus::IterationLimit;
          compute_x();
        }
      }
    }
    return LpStatus::IterationLimit;
  }

  IncrementalSimplex& host_;
  int nv_ = 0, m_ = 0, ncols_ = 0;
  long pivots_ = 0;
  std::vector<SparseCol> cols_;
  std::vector<double> lo_, hi_, rhs_, xb_, binv_;
  std::vector<int> basis_;
  std::vector<signed char> state_;
};

IncrementalSimplex::IncrementalSimplex(std::vector<double> cost,
                                       std::vector<double> lower,
                                       std::vector<double> upper)
    : cost_(std::move(cost)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (cost_.size() != lower_.size() || cost_.size() != upper_.size())
    throw std::invalid_argument("IncrementalSimplex: size mismatch");
}

void IncrementalSimplex::add_row(const LpRow& row) {
  for (const LpTerm& t : row.terms)
    if (t.var < 0 || t.var >= static_cast<int>(cost_.size()))
      throw std::invalid_argument("IncrementalSimplex: bad var index");
  rows_.push_back(row);
}

void IncrementalSimplex::set_bounds(int var, double lo, double hi) {
  lower_.at(var) = lo;
  upper_.at(var) = hi;
}

LpSolution IncrementalSimplex::solve() {
  SimplexImpl impl(*this);
  return impl.run();
}

LpSolution lp_min(const LpProblem& problem) {
  IncrementalSimplex simplex(problem.cost, problem.lower, problem.upper);
  for (const LpRow& row : problem.rows) simplex.add_row(row);
  return simplex.solve();
}

}  // namespace subeuclid
