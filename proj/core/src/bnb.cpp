#include "subeuclid/bnb.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>

#include "subeuclid/errors.hpp"
#include "subeuclid/held_karp.hpp"
#include "subeuclid/local_moves.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/rng.hpp"
#include "subeuclid/tour_ops.hpp"
#include "subeuclid/two_factor.hpp"

namespace subeuclid {

namespace {

constexpr double kPruneTol = 1e-9;

std::vector<Edge> cycle_edge_list(const std::vector<int>& cycle) {
  std::vector<Edge> edges;
  const int m = static_cast<int>(cycle.size());
  for (int i = 0; i < m; ++i)
    edges.push_back(make_edge(cycle[i], cycle[(i + 1) % m]));
  return edges;
}

struct Node {
  double bound = 0;
  int depth = 0;
  Constraints cons;
  // Bound structure: exactly one is meaningful per bound kind.
  TwoFactor factor;
  FractionalSolution fractional;
  bool closed = false;  // bound structure is itself a tour
  Tour closed_tour;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.depth < b.depth;  // deeper first on ties
  }
};

}  // namespace

std::vector<Constraints> two_factor_branch_children(const std::vector<int>& cycle,
                                                    const Constraints& parent) {
  std::vector<Constraints> children;
  const auto edges = cycle_edge_list(cycle);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    Constraints cj = parent;
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
    children.push_back(std::move(cj));
  }
  return children;
}

std::vector<Constraints> lp_branch_children(Edge e, const Constraints& parent) {
  std::vector<Constraints> children;
  children.push_back(parent.with_include(e));  // include-first child order
  children.push_back(parent.with_exclude(e));
  return children;
}

namespace {

class BnbSolver {
 public:
  BnbSolver(const PointSet& ps, const BnbOptions& opt) : ps_(ps), opt_(opt), n_(ps.size()) {}

  BnbResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    BnbResult res;
    seed_incumbent();

    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    bool budget_hit = false;
    auto consider_child = [&](const Constraints& cons, int depth) {
      if (stats_.nodes_expanded >= opt_.node_budget) {
        budget_hit = true;
        return;
      }
      Node node;
      node.cons = cons;
      node.depth = depth;
      ++stats_.nodes_expanded;
      stats_.max_depth = std::max(stats_.max_depth, depth);
      if (!evaluate(node)) {
        // Infeasible subproblem: a leaf pruned by infeasibility.
        ++stats_.leaves;
        ++stats_.pruned_nodes;
        return;
      }
      update_incumbent_from(node);
      if (node.closed) {
        ++stats_.leaves;
        return;
      }
      if (node.bound >= incumbent_len_ - kPruneTol) {
        ++stats_.leaves;
        ++stats_.pruned_nodes;
        return;
      }
      queue.push(std::move(node));
    };

    consider_child(Constraints{}, 0);
    while (!queue.empty()) {
      Node node = queue.top();
      queue.pop();
      if (node.bound >= incumbent_len_ - kPruneTol) {
        // Everything left proves no improvement; count as pruned leaves.
        stats_.leaves += queue.size() + 1;
        stats_.pruned_nodes += queue.size() + 1;
        break;
      }
      std::vector<Constraints> children = branch(node);
      if (children.empty()) {
        ++stats_.leaves;
        continue;
      }
      for (const Constraints& c : children) {
        if (!validate_constraints(n_, c)) {
          // No tour satisfies the forced degrees; an immediate leaf.
          ++stats_.nodes_expanded;
          ++stats_.leaves;
          ++stats_.pruned_nodes;
          continue;
        }
        consider_child(c, node.depth + 1);
      }
    }

    res.tour = incumbent_;
    res.length = incumbent_len_;
    res.stats = stats_;
    res.stats.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.optimal = !budget_hit;
    return res;
  }

 private:
  void seed_incumbent() {
    if (opt_.incumbent == IncumbentMode::Oracle && n_ <= 14) {
      auto [tour, len] = tsp_oracle(ps_);
      incumbent_ = tour;
      incumbent_len_ = len;
      return;
    }
    auto relaxed = two_factor(ps_);
    auto patched = patch_to_tour(ps_, relaxed.factor);
    Tour improved = tour_2opt(ps_, patched.tour);
    incumbent_ = improved;
    incumbent_len_ = tour_length(ps_, improved);
  }

  // Computes the node's bound and structure; false when infeasible.
  bool evaluate(Node& node) {
    ++stats_.bound_calls;
    try {
      switch (opt_.bound) {
        case BoundKind::TwoFactorBound: {
          auto r = two_factor(ps_, node.cons);
          node.bound = r.length;
          node.factor = std::move(r.factor);
          if (node.factor.cycles.size() == 1) {
            node.closed = true;
            node.closed_tour.order = node.factor.cycles[0];
          }
          return true;
        }
        case BoundKind::TwoFactorGirthBound: {
          auto r = two_factor_girth(ps_, opt_.girth, node.cons, 20000);
          if (r.optimal) {
            node.bound = r.length;
            node.factor = std::move(r.factor);
          } else {
            node.bound = r.best_bound;  // valid lower bound either way
            node.factor = two_factor(ps_, node.cons).factor;
          }
          if (node.factor.cycles.size() == 1) {
            node.closed = true;
            node.closed_tour.order = node.factor.cycles[0];
          }
          return true;
        }
        case BoundKind::HeldKarpBound: {
          auto r = hk_value(ps_, node.cons);
          node.bound = r.value;
          node.fractional = std::move(r.solution);
          Tour integral;
          if (fractional_is_tour(node.fractional, &integral)) {
            node.closed = true;
            node.closed_tour = std::move(integral);
          }
          return true;
        }
      }
    } catch (const InfeasibleError&) {
      return false;
    }
    return false;
  }

  static bool fractional_is_tour(const FractionalSolution& sol, Tour* out) {
    std::vector<Edge> support;
    for (const auto& [e, w] : sol.weights) {
      if (w > 1e-7 && w < 1.0 - 1e-7) return false;
      if (w >= 1.0 - 1e-7) support.push_back(e);
    }
    if (static_cast<int>(support.size()) != sol.n) return false;
    std::vector<std::vector<int>> adj(sol.n);
    for (const Edge& e : support) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (int v = 0; v < sol.n; ++v)
      if (adj[v].size() != 2) return false;
    Tour t;
    std::vector<char> seen(sol.n, 0);
    int prev = -1, cur = 0;
    for (int i = 0; i < sol.n; ++i) {
      t.order.push_back(cur);
      seen[cur] = 1;
      const int next = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
    }
    if (cur != 0) return false;  // support is disconnected
    for (char s : seen)
      if (!s) return false;
    *out = std::move(t);
    return true;
  }

  void update_incumbent_from(const Node& node) {
    Tour candidate;
    if (node.closed) {
      candidate = node.closed_tour;
    } else if (opt_.bound != BoundKind::HeldKarpBound) {
      auto patched = patch_to_tour(ps_, node.factor);
      candidate = tour_2opt(ps_, patched.tour);
    } else {
      candidate = tour_2opt(ps_, greedy_tour_from_fractional(ps_, node.fractional));
    }
    const double len = tour_length(ps_, candidate);
    if (len < incumbent_len_ - 1e-12) {
      incumbent_len_ = len;
      incumbent_ = std::move(candidate);
    }
  }

  std::vector<Constraints> branch(const Node& node) {
    if (opt_.bound == BoundKind::HeldKarpBound) {
      // Edge with weight closest to 1/2 among strictly fractional edges;
      // fall back to any unfixed support edge when the point is integral
      // but not a tour (disconnected integral 2-factor).
      Edge best{-1, -1};
      double score = std::numeric_limits<double>::infinity();
      for (const auto& [e, w] : node.fractional.weights) {
        if (node.cons.includes(e) || node.cons.excludes(e)) continue;
        const double s = std::fabs(w - 0.5);
        if (s < score) {
          score = s;
          best = e;
        }
      }
      if (best.u < 0) return {};
      return lp_branch_children(best, node.cons);
    }
    const std::vector<int>* victim = nullptr;
    for (const auto& cyc : node.factor.cycles)
      if (static_cast<int>(cyc.size()) < n_ &&
          (!victim || cyc.size() < victim->size()))
        victim = &cyc;
    if (!victim) return {};
    return two_factor_branch_children(*victim, node.cons);
  }

  const PointSet& ps_;
  BnbOptions opt_;
  int n_;
  BnbStats stats_;
  Tour incumbent_;
  double incumbent_len_ = std::numeric_limits<double>::infinity();
};

}  // namespace

BnbResult solve_bnb(const PointSet& ps, const BnbOptions& options) {
  if (ps.size() < 4) throw std::invalid_argument("solve_bnb: requires n >= 4");
  return BnbSolver(ps, options).run();
}

std::vector<GrowthRow> growth_experiment(const std::vector<int>& sizes, int trials,
                                         BoundKind bound, std::uint64_t seed,
                                         std::uint64_t node_budget, int jobs,
                                         int girth) {
  struct Task {
    int n, trial;
  };
  std::vector<Task> tasks;
  for (int n : sizes)
    for (int t = 0; t < trials; ++t) tasks.push_back({n, t});
  std::vector<GrowthRow> rows(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto [n, trial] = tasks[i];
      const std::uint64_t s =
          derive_seed(seed, static_cast<std::uint64_t>(n) * 1000003ull + trial);
      PointSet ps = generate_uniform(n, 2, s);
      BnbOptions opt;
      opt.bound = bound;
      opt.girth = girth;
      opt.node_budget = node_budget;
      BnbResult res = solve_bnb(ps, opt);
      rows[i] = GrowthRow{n,
                          trial,
                          res.stats.nodes_expanded,
                          res.stats.leaves,
                          res.stats.pruned_nodes,
                          res.optimal,
                          res.stats.wall_time};
    }
  };
  const int workers = std::max(1, jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace subeuclid
