#include "subeuclid/blossom.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace subeuclid {

namespace {

// Maximum-weight matching on a dense graph, primal-dual with blossoms.
// Vertices are 1..n internally; ids n+1..2n are blossom slots. Weights are
// positive for present edges and exactly 0 for absent ones. Duals are kept
// doubled (lab ~ 2y) so all adjustments stay in the same lattice as the
// input weights; comparisons use a scale-relative epsilon since weights
// are doubles.
class MaxWeightMatching {
 public:
  MaxWeightMatching(int n, const std::vector<WeightedEdge>& edges, double shift)
      : n_(n), size_(2 * n + 1) {
    g_.assign(static_cast<std::size_t>(size_) * size_, Rec{});
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) rec(u, v) = Rec{u, v, 0.0};
    double w_max = 0;
    for (const auto& e : edges) {
      const int u = e.u + 1, v = e.v + 1;
      const double w = shift - e.cost;
      if (w <= 0) throw std::invalid_argument("blossom: weight shift too small");
      if (w > rec(u, v).w) rec(u, v).w = rec(v, u).w = w;  // keep cheapest parallel
      w_max = std::max(w_max, w);
    }
    eps_ = std::max(1e-12 * std::max(1.0, w_max), 1e-14);
    lab_.assign(size_, 0.0);
    match_.assign(size_, 0);
    slack_.assign(size_, 0);
    st_.assign(size_, 0);
    pa_.assign(size_, 0);
    state_.assign(size_, -1);
    vis_.assign(size_, 0);
    flower_.assign(size_, {});
    flower_from_.assign(static_cast<std::size_t>(size_) * (n_ + 1), 0);
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) st_[u] = u;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) ffrom(u, v) = (u == v ? u : 0);
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
  }

  int run() {
    int matches = 0;
    while (grow_phase()) ++matches;
    return matches;
  }

  int mate_of(int u) const { return match_[u + 1] - 1; }  // -1 if unmatched

  // lab ~ 2*y in the max-weight convention.
  double doubled_dual(int u) const { return lab_[u + 1]; }

 private:
  struct Rec {
    int u = 0, v = 0;
    double w = 0;
  };

  Rec& rec(int u, int v) { return g_[static_cast<std::size_t>(u) * size_ + v]; }
  const Rec& rec(int u, int v) const {
    return g_[static_cast<std::size_t>(u) * size_ + v];
  }
  int& ffrom(int b, int x) {
    return flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x];
  }

  double slack_of(const Rec& e) const { return lab_[e.u] + lab_[e.v] - 2 * e.w; }

  void update_slack(int u, int x) {
    if (!slack_[x] || slack_of(rec(u, x)) < slack_of(rec(slack_[x], x)))
      slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (rec(u, x).w > 0 && st_[u] != x && state_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_)
      queue_.push_back(x);
    else
      for (int sub : flower_[x]) q_push(sub);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int sub : flower_[x]) set_st(sub, b);
  }

  int get_pr(int b, int xr) {
    auto& f = flower_[b];
    int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
    if (pr % 2 == 1) {
      std::reverse(f.begin() + 1, f.end());
      return static_cast<int>(f.size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    Rec& e = rec(u, v);
    match_[u] = e.v;
    if (u > n_) {
      int xr = ffrom(u, e.u);
      int pr = get_pr(u, xr);
      auto& f = flower_[u];
      for (int i = 0; i < pr; ++i) set_match(f[i], f[i ^ 1]);
      set_match(xr, v);
      std::rotate(f.begin(), f.begin() + pr, f.end());
    }
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++timer_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == timer_) return u;
      vis_[u] = timer_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    state_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) rec(b, x).w = rec(x, b).w = 0;
    for (int x = 1; x <= n_; ++x) ffrom(b, x) = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (rec(b, x).w == 0 ||
            (rec(xs, x).w > 0 && slack_of(rec(xs, x)) < slack_of(rec(b, x)))) {
          if (rec(xs, x).w > 0) {
            rec(b, x) = rec(xs, x);
            rec(x, b) = rec(x, xs);
          }
        }
      for (int x = 1; x <= n_; ++x)
        if (ffrom(xs, x)) ffrom(b, x) = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int sub : flower_[b]) set_st(sub, sub);
    int xr = ffrom(b, rec(b, pa_[b]).u);
    int pr = get_pr(b, xr);
    auto& f = flower_[b];
    for (int i = 0; i < pr; i += 2) {
      int xs = f[i], xns = f[i + 1];
      pa_[xs] = rec(xns, xs).u;
      state_[xs] = 1;
      state_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    state_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = pr + 1; i < f.size(); ++i) {
      state_[f[i]] = -1;
      set_slack(f[i]);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Rec& e) {
    int u = st_[e.u], v = st_[e.v];
    if (state_[v] == -1) {
      pa_[v] = e.u;
      state_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      state_[nu] = 0;
      q_push(nu);
    } else if (state_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool grow_phase() {
    std::fill(state_.begin(), state_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        state_[x] = 0;
        q_push(x);
      }
    if (queue_.empty()) return false;
    const double inf = std::numeric_limits<double>::infinity();
    long guard = 0;
    const long guard_limit = 200L * (n_ + 16) * (n_ + 16);
    for (;;) {
      if (++guard > guard_limit)
        throw std::runtime_error("blossom: dual adjustment did not converge");
      while (!queue_.empty()) {
        int u = queue_.front();
        queue_.pop_front();
        if (state_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (rec(u, v).w > 0 && st_[u] != st_[v]) {
            if (slack_of(rec(u, v)) <= eps_) {
              if (on_found_edge(rec(u, v))) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      double d = inf;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && state_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (state_[x] == -1)
            d = std::min(d, slack_of(rec(slack_[x], x)));
          else if (state_[x] == 0)
            d = std::min(d, slack_of(rec(slack_[x], x)) / 2);
        }
      if (d == inf) return false;
      d = std::max(d, 0.0);
      for (int u = 1; u <= n_; ++u) {
        if (state_[st_[u]] == 0) {
          if (lab_[u] <= d + eps_) return false;
          lab_[u] -= d;
        } else if (state_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b) {
          if (state_[b] == 0)
            lab_[b] += 2 * d;
          else if (state_[b] == 1)
            lab_[b] = std::max(lab_[b] - 2 * d, 0.0);
        }
      queue_.clear();
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            slack_of(rec(slack_[x], x)) <= eps_) {
          if (on_found_edge(rec(slack_[x], x))) return true;
        }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && state_[b] == 1 && lab_[b] <= eps_) expand_blossom(b);
    }
  }

  int n_;
  int size_;
  int n_x_ = 0;
  double eps_ = 1e-12;
  int timer_ = 0;
  std::vector<Rec> g_;
  std::vector<double> lab_;
  std::vector<int> match_, slack_, st_, pa_, state_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<int> flower_from_;
  std::deque<int> queue_;
};

}  // namespace

PerfectMatchingResult min_weight_perfect_matching(int n,
                                                  const std::vector<WeightedEdge>& edges) {
  PerfectMatchingResult out;
  out.mate.assign(n, -1);
  out.dual.assign(n, 0.0);
  if (n == 0) {
    out.perfect = true;
    return out;
  }
  if (n % 2 == 1) return out;  // odd vertex count can never match perfectly

  // Shift costs so that maximizing total weight forces maximum cardinality:
  // each extra matched edge then outweighs any reshuffling of the others.
  double c_max = 0, c_min = 0;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
      throw std::invalid_argument("blossom: bad edge");
    c_max = std::max(c_max, e.cost);
    c_min = std::min(c_min, e.cost);
  }
  const double shift = (n / 2.0) * (c_max - c_min) + c_max + 1.0;

  MaxWeightMatching mw(n, edges, shift);
  mw.run();

  out.perfect = true;
  for (int u = 0; u < n; ++u) {
    out.mate[u] = mw.mate_of(u);
    if (out.mate[u] < 0) out.perfect = false;
    // Min-convention dual: y_min = (shift - lab)/2.
    out.dual[u] = (shift - mw.doubled_dual(u)) / 2.0;
  }
  // Recompute the matched cost from the original edge list (not the shifted
  // weights) so the reported value carries no transform roundoff. Parallel
  // edges: the solver kept the cheapest, so sum the cheapest per pair.
  std::vector<double> pair_cost(static_cast<std::size_t>(n), 0.0);
  std::vector<bool> found(static_cast<std::size_t>(n), false);
  for (const auto& e : edges) {
    if (out.mate[e.u] == e.v) {
      int lo = std::min(e.u, e.v);
      if (!found[lo] || e.cost < pair_cost[lo]) {
        pair_cost[lo] = e.cost;
        found[lo] = true;
      }
    }
  }
  double total = 0;
  for (int u = 0; u < n; ++u)
    if (out.mate[u] > u && found[u]) total += pair_cost[u];
  out.total_cost = total;
  return out;
}

}  // namespace subeuclid
