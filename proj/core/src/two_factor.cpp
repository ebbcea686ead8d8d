#include "subeuclid/two_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "subeuclid/blossom.hpp"
#include "subeuclid/errors.hpp"

namespace subeuclid {

namespace {

constexpr double kPriceTol = 1e-9;
constexpr double kBoundTol = 1e-9;

std::vector<std::vector<int>> cycles_from_cover(int n, const std::vector<Edge>& cover) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : cover) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    int prev = -1, cur = s;
    do {
      cyc.push_back(cur);
      seen[cur] = 1;
      int next = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
    } while (cur != s);
    // Canonical orientation: start at the smallest vertex, step toward its
    // smaller neighbor.
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    if (cyc.size() > 2 && cyc[1] > cyc.back())
      std::reverse(cyc.begin() + 1, cyc.end());
    cycles.push_back(std::move(cyc));
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return cycles;
}

class TwoFactorSolver {
 public:
  TwoFactorSolver(const PointSet& ps, const Constraints& cons)
      : ps_(ps), n_(ps.size()), cons_(cons) {
    if (n_ < 3) throw std::invalid_argument("two_factor: requires n >= 3");
    if (auto v = validate_constraints(n_, cons); !v) {
      // Identify the violating vertex for the degree case.
      auto deg = edge_degrees(n_, cons.include);
      for (int u = 0; u < n_; ++u)
        if (deg[u] >= 3) throw InfeasibleError("two_factor: " + v.message, u);
      throw InfeasibleError("two_factor: " + v.message);
    }
    excluded_.insert(cons.exclude.begin(), cons.exclude.end());
    forced_.insert(cons.include.begin(), cons.include.end());
  }

  TwoFactorResult solve() {
    build_candidates(false);
    for (;;) {
      auto matching = solve_gadget();
      if (!matching.perfect) {
        if (!complete_) {
          build_candidates(true);  // sparsity artifact? retry on all edges
          continue;
        }
        report_infeasible(matching);
      }
      if (complete_ || price(matching)) return extract(matching);
      // price() appended violated edges; re-solve.
    }
  }

 private:
  void build_candidates(bool complete) {
    complete_ = complete || n_ <= 14;
    candidates_.clear();
    std::set<Edge> chosen;
    if (complete_) {
      for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v) chosen.insert(Edge{u, v});
    } else {
      const int k = std::min(n_ - 1, 12);
      std::vector<std::pair<double, int>> order(n_);
      for (int u = 0; u < n_; ++u) {
        for (int v = 0; v < n_; ++v) order[v] = {ps_.distance(u, v), v};
        order[u].first = std::numeric_limits<double>::infinity();
        std::partial_sort(order.begin(), order.begin() + k, order.end());
        for (int i = 0; i < k; ++i) chosen.insert(make_edge(u, order[i].second));
      }
      for (const Edge& e : forced_) chosen.insert(e);
    }
    for (const Edge& e : excluded_) chosen.erase(e);
    candidates_.assign(chosen.begin(), chosen.end());
  }

  // Gadget: two copies per vertex, two nodes per candidate edge. A pair
  // matched internally means the edge stays out of the 2-factor; pairs of
  // forced edges carry no internal edge, which forces them in.
  PerfectMatchingResult solve_gadget() {
    const int m = static_cast<int>(candidates_.size());
    gadget_nodes_ = 2 * n_ + 2 * m;
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(m) * 5);
    for (int i = 0; i < m; ++i) {
      const Edge e = candidates_[i];
      const double half = ps_.distance(e.u, e.v) / 2.0;
      const int a = 2 * n_ + 2 * i, b = a + 1;
      edges.push_back({2 * e.u, a, half});
      edges.push_back({2 * e.u + 1, a, half});
      edges.push_back({2 * e.v, b, half});
      edges.push_back({2 * e.v + 1, b, half});
      if (!forced_.count(e)) edges.push_back({a, b, 0.0});
    }
    return min_weight_perfect_matching(gadget_nodes_, edges);
  }

  [[noreturn]] void report_infeasible(const PerfectMatchingResult& matching) {
    for (int v = 0; v < n_; ++v)
      if (matching.mate[2 * v] < 0 || matching.mate[2 * v + 1] < 0)
        throw InfeasibleError("two_factor: no constrained 2-factor exists", v);
    throw InfeasibleError("two_factor: no constrained 2-factor exists");
  }

  // Reduced-cost check for every non-candidate allowed edge. An omitted
  // edge's gadget can be appended with unchanged objective iff
  // max(dual of u's copies) + max(dual of v's copies) <= cost; otherwise it
  // must enter the candidate set.
  bool price(const PerfectMatchingResult& matching) {
    std::vector<double> ymax(n_);
    for (int v = 0; v < n_; ++v)
      ymax[v] = std::max(matching.dual[2 * v], matching.dual[2 * v + 1]);
    std::set<Edge> have(candidates_.begin(), candidates_.end());
    bool clean = true;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) {
        const Edge e{u, v};
        if (have.count(e) || excluded_.count(e)) continue;
        if (ymax[u] + ymax[v] > ps_.distance(u, v) + kPriceTol) {
          candidates_.push_back(e);
          clean = false;
        }
      }
    if (!clean) std::sort(candidates_.begin(), candidates_.end());
    return clean;
  }

  TwoFactorResult extract(const PerfectMatchingResult& matching) {
    std::vector<Edge> cover;
    double length = 0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      const int a = 2 * n_ + 2 * static_cast<int>(i);
      if (matching.mate[a] != a + 1) {
        cover.push_back(candidates_[i]);
        length += ps_.distance(candidates_[i].u, candidates_[i].v);
      }
    }
    for (const Edge& e : forced_)
      if (std::find(cover.begin(), cover.end(), e) == cover.end())
        throw std::logic_error("two_factor: forced edge missing from solution");
    TwoFactorResult res;
    res.factor.cycles = cycles_from_cover(n_, cover);
    res.length = length;
    return res;
  }

  const PointSet& ps_;
  int n_;
  Constraints cons_;
  bool complete_ = false;
  int gadget_nodes_ = 0;
  std::vector<Edge> candidates_;
  std::set<Edge> forced_, excluded_;
};

std::vector<Edge> cycle_edges_in_order(const std::vector<int>& cyc) {
  std::vector<Edge> edges;
  const int m = static_cast<int>(cyc.size());
  for (int i = 0; i < m; ++i) edges.push_back(make_edge(cyc[i], cyc[(i + 1) % m]));
  return edges;
}

struct GirthNode {
  double bound;
  Constraints cons;
  TwoFactor factor;
};

struct GirthNodeOrder {
  bool operator()(const GirthNode& a, const GirthNode& b) const {
    return a.bound > b.bound;
  }
};

}  // namespace

TwoFactorResult two_factor(const PointSet& ps, const Constraints& cons) {
  return TwoFactorSolver(ps, cons).solve();
}

TwoFactorGirthResult two_factor_girth(const PointSet& ps, int girth,
                                      const Constraints& cons,
                                      std::uint64_t node_budget) {
  const int n = ps.size();
  const int g = std::max(girth, 3);
  if (n < g) throw InfeasibleError("two_factor_girth: infeasible, n < max(g,3)");

  TwoFactorGirthResult res;
  std::priority_queue<GirthNode, std::vector<GirthNode>, GirthNodeOrder> queue;
  bool budget_hit = false;

  // Returns false when the child subproblem is empty or the budget is gone.
  auto push_node = [&](const Constraints& c, bool is_root) {
    if (res.nodes >= node_budget) {
      budget_hit = true;
      return;
    }
    ++res.nodes;
    try {
      auto relaxed = two_factor(ps, c);
      queue.push(GirthNode{relaxed.length, c, std::move(relaxed.factor)});
    } catch (const InfeasibleError&) {
      if (is_root) throw;
    }
  };
  push_node(cons, true);

  double incumbent = std::numeric_limits<double>::infinity();
  TwoFactor incumbent_factor;
  bool proved_optimal = false;
  while (!queue.empty()) {
    GirthNode node = queue.top();
    queue.pop();
    res.best_bound = node.bound;  // best-first pops in nondecreasing order
    if (node.bound >= incumbent - kBoundTol) {
      proved_optimal = true;
      break;
    }
    // Shortest violating cycle (fewest vertices, smallest head on ties).
    const std::vector<int>* victim = nullptr;
    for (const auto& cyc : node.factor.cycles)
      if (static_cast<int>(cyc.size()) < g &&
          (!victim || cyc.size() < victim->size()))
        victim = &cyc;
    if (!victim) {
      // With an exact relaxation and best-first order the first feasible
      // node is optimal, unless pruning was cut short by the budget.
      incumbent = node.bound;
      incumbent_factor = node.factor;
      res.best_bound = node.bound;
      proved_optimal = true;
      break;
    }
    auto edges = cycle_edges_in_order(*victim);
    for (std::size_t j = 0; j < edges.size(); ++j) {
      // Child j excludes cycle edge j and includes all earlier ones.
      Constraints cj = node.cons;
      bool skip = false;
      for (std::size_t i = 0; i < j; ++i) {
        if (cj.excludes(edges[i])) {
          skip = true;
          break;
        }
        cj = cj.with_include(edges[i]);
      }
      if (skip || cj.includes(edges[j])) continue;
      cj = cj.with_exclude(edges[j]);
      if (!validate_constraints(n, cj)) continue;  // forced degree overflow
      push_node(cj, false);
    }
  }
  if (!std::isfinite(incumbent)) {
    if (budget_hit) {
      res.optimal = false;
      return res;  // budget exhausted before any feasible solution appeared
    }
    throw InfeasibleError("two_factor_girth: no feasible girth-constrained 2-factor");
  }
  res.factor = incumbent_factor;
  res.length = incumbent;
  res.optimal = proved_optimal && !budget_hit;
  return res;
}

}  // namespace subeuclid
