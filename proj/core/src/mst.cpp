#include "subeuclid/mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "subeuclid/rng.hpp"

namespace subeuclid {

std::pair<SpanningTree, double> mst(const PointSet& ps) {
  const int n = ps.size();
  if (n < 1) throw std::invalid_argument("mst: requires n >= 1");
  SpanningTree tree;
  if (n == 1) return {tree, 0.0};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<int> from(n, -1);
  std::vector<char> done(n, 0);
  best[0] = 0;
  double total = 0;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && (u == -1 || best[v] < best[u])) u = v;
    done[u] = 1;
    if (from[u] >= 0) {
      tree.edges.push_back(make_edge(u, from[u]));
      total += best[u];
    }
    for (int v = 0; v < n; ++v)
      if (!done[v]) {
        const double w = ps.distance(u, v);
        if (w < best[v]) {
          best[v] = w;
          from[v] = u;
        }
      }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return {tree, total};
}

std::map<int, int> mst_degree_histogram(const SpanningTree& tree) {
  std::map<int, int> hist;
  int max_vertex = -1;
  for (const Edge& e : tree.edges) max_vertex = std::max({max_vertex, e.u, e.v});
  std::vector<int> deg(max_vertex + 1, 0);
  for (const Edge& e : tree.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (int d : deg) ++hist[d];
  return hist;
}

namespace {

constexpr double kImproveTol = 1e-12;

// Minimum Hamiltonian path with free endpoints (max degree 2 spanning tree).
MstKResult hamiltonian_path_dp(const PointSet& ps) {
  const int n = ps.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = ps.distance(i, j);
  std::vector<std::vector<double>> dp(1 << n, std::vector<double>(n, inf));
  std::vector<std::vector<int>> from(1 << n, std::vector<int>(n, -1));
  for (int j = 0; j < n; ++j) dp[1 << j][j] = 0;
  for (int mask = 1; mask < (1 << n); ++mask)
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1 << j)) || dp[mask][j] == inf) continue;
      for (int k = 0; k < n; ++k) {
        if (mask & (1 << k)) continue;
        const double cand = dp[mask][j] + d[j][k];
        if (cand < dp[mask | (1 << k)][k]) {
          dp[mask | (1 << k)][k] = cand;
          from[mask | (1 << k)][k] = j;
        }
      }
    }
  const int full = (1 << n) - 1;
  int end = 0;
  for (int j = 1; j < n; ++j)
    if (dp[full][j] < dp[full][end]) end = j;
  MstKResult res;
  res.length = dp[full][end];
  res.exact = true;
  int mask = full, j = end;
  while (from[mask][j] >= 0) {
    int pj = from[mask][j];
    res.tree.edges.push_back(make_edge(j, pj));
    mask ^= 1 << j;
    j = pj;
  }
  std::sort(res.tree.edges.begin(), res.tree.edges.end());
  return res;
}

struct EdgeRec {
  Edge e;
  double w;
};

// Exact minimum spanning tree subject to forced/banned edges, or +inf cost
// when infeasible (forced edges cyclic or graph disconnected).
double constrained_mst(int n, const std::vector<EdgeRec>& sorted_edges,
                       const std::set<Edge>& forced, const std::set<Edge>& banned,
                       std::vector<Edge>* out) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double total = 0;
  int used = 0;
  if (out) out->clear();
  for (const Edge& e : forced) {
    int a = find(e.u), b = find(e.v);
    if (a == b) return std::numeric_limits<double>::infinity();
    parent[a] = b;
    ++used;
    if (out) out->push_back(e);
  }
  for (const auto& rec : sorted_edges) {
    if (forced.count(rec.e)) total += rec.w;
  }
  for (const auto& rec : sorted_edges) {
    if (used == n - 1) break;
    if (forced.count(rec.e) || banned.count(rec.e)) continue;
    int a = find(rec.e.u), b = find(rec.e.v);
    if (a == b) continue;
    parent[a] = b;
    total += rec.w;
    ++used;
    if (out) out->push_back(rec.e);
  }
  if (used != n - 1) return std::numeric_limits<double>::infinity();
  return total;
}

struct BnbNode {
  double bound;
  std::set<Edge> forced, banned;
  std::vector<Edge> tree;
  bool operator>(const BnbNode& other) const { return bound > other.bound; }
};

// Branch-and-bound for the degree-constrained MST: relax the degree bound,
// then at each node force/ban the tree edges around a violating vertex in
// the sequential child scheme. Exact when it drains within the node budget.
bool mst_k_branch_bound(const PointSet& ps, int k, long budget, MstKResult* res) {
  const int n = ps.size();
  std::vector<EdgeRec> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      edges.push_back({Edge{u, v}, ps.distance(u, v)});
  std::sort(edges.begin(), edges.end(),
            [](const EdgeRec& a, const EdgeRec& b) {
              return a.w < b.w || (a.w == b.w && a.e < b.e);
            });

  std::priority_queue<BnbNode, std::vector<BnbNode>, std::greater<BnbNode>> queue;
  BnbNode root;
  root.bound = constrained_mst(n, edges, {}, {}, &root.tree);
  queue.push(std::move(root));

  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<Edge> incumbent_tree;
  long expanded = 0;
  while (!queue.empty()) {
    if (++expanded > budget) return false;
    BnbNode node = queue.top();
    queue.pop();
    if (node.bound >= incumbent - kImproveTol) break;  // best-first: done
    auto deg = edge_degrees(n, node.tree);
    int violator = -1;
    for (int v = 0; v < n; ++v)
      if (deg[v] > k) {
        violator = v;
        break;
      }
    if (violator < 0) {
      incumbent = node.bound;
      incumbent_tree = node.tree;
      continue;
    }
    std::vector<Edge> around;
    for (const Edge& e : node.tree)
      if (e.u == violator || e.v == violator) around.push_back(e);
    // Sequential inclusion/exclusion children over the violator's edges.
    for (std::size_t j = 0; j < around.size(); ++j) {
      BnbNode child;
      child.forced = node.forced;
      child.banned = node.banned;
      bool ok = true;
      for (std::size_t i = 0; i < j; ++i) {
        if (child.banned.count(around[i])) {
          ok = false;
          break;
        }
        child.forced.insert(around[i]);
      }
      if (!ok || child.forced.count(around[j])) continue;
      child.banned.insert(around[j]);
      std::vector<Edge> fvec(child.forced.begin(), child.forced.end());
      auto fdeg = edge_degrees(n, fvec);
      if (*std::max_element(fdeg.begin(), fdeg.end()) > k) continue;
      child.bound = constrained_mst(n, edges, child.forced, child.banned, &child.tree);
      if (!std::isfinite(child.bound) || child.bound >= incumbent - kImproveTol)
        continue;
      queue.push(std::move(child));
    }
  }
  if (!std::isfinite(incumbent)) return false;
  res->tree.edges = incumbent_tree;
  std::sort(res->tree.edges.begin(), res->tree.edges.end());
  res->length = incumbent;
  res->exact = true;
  return true;
}

// Nearest-neighbor Hamiltonian path; feasible for any degree bound >= 2.
std::vector<Edge> nearest_neighbor_path(const PointSet& ps) {
  const int n = ps.size();
  std::vector<char> used(n, 0);
  std::vector<Edge> edges;
  int cur = 0;
  used[0] = 1;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double bw = std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        const double w = ps.distance(cur, v);
        if (w < bw) {
          bw = w;
          best = v;
        }
      }
    edges.push_back(make_edge(cur, best));
    used[best] = 1;
    cur = best;
  }
  return edges;
}

class DegreeBoundedSearch {
 public:
  DegreeBoundedSearch(const PointSet& ps, int k) : ps_(ps), n_(ps.size()), k_(k) {
    // Candidate reconnection endpoints: each vertex's nearest neighbors.
    const int cand = std::min(n_ - 1, 10);
    knn_.assign(n_, {});
    std::vector<std::pair<double, int>> order(n_);
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) order[v] = {ps_.distance(u, v), v};
      order[u].first = std::numeric_limits<double>::infinity();
      std::partial_sort(order.begin(), order.begin() + cand, order.end());
      for (int i = 0; i < cand; ++i) knn_[u].push_back(order[i].second);
    }
  }

  MstKResult run() {
    auto [tree, len] = mst(ps_);
    load(tree.edges);
    if (!repair()) load(nearest_neighbor_path(ps_));
    Rng rng(0x5eedf00dull + static_cast<std::uint64_t>(n_) * 131 + k_);
    const long iterations = 200L * n_;
    std::vector<Edge> tree_edges;
    for (long it = 0; it < iterations; ++it) {
      tree_edges.assign(edges_.begin(), edges_.end());
      const Edge victim = tree_edges[rng.below(tree_edges.size())];
      improve_swap(victim);
    }
    MstKResult res;
    res.tree.edges.assign(edges_.begin(), edges_.end());
    std::sort(res.tree.edges.begin(), res.tree.edges.end());
    res.length = structure_length(ps_, res.tree.edges);
    res.exact = false;
    return res;
  }

 private:
  void load(const std::vector<Edge>& edges) {
    edges_.clear();
    edges_.insert(edges.begin(), edges.end());
    deg_.assign(n_, 0);
    for (const Edge& e : edges) {
      ++deg_[e.u];
      ++deg_[e.v];
    }
  }

  std::vector<char> side_of(Edge removed) const {
    std::vector<std::vector<int>> adj(n_);
    for (const Edge& e : edges_) {
      if (e == removed) continue;
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<char> mark(n_, 0);
    std::vector<int> stack{removed.u};
    mark[removed.u] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!mark[v]) {
          mark[v] = 1;
          stack.push_back(v);
        }
    }
    return mark;
  }

  // Replace `removed` by the cheapest candidate edge across the split that
  // respects the degree bound. When `need_improvement` the swap must be
  // strictly shorter.
  bool reroute(Edge removed, bool need_improvement) {
    auto side = side_of(removed);
    Edge best_edge{-1, -1};
    double best_w = need_improvement ? edge_length(ps_, removed) - kImproveTol
                                     : std::numeric_limits<double>::infinity();
    auto consider = [&](int a, int b) {
      if (side[a] == side[b]) return;
      Edge cand = make_edge(a, b);
      if (cand == removed || edges_.count(cand)) return;
      int da = deg_[a] - ((a == removed.u || a == removed.v) ? 1 : 0);
      int db = deg_[b] - ((b == removed.u || b == removed.v) ? 1 : 0);
      if (da + 1 > k_ || db + 1 > k_) return;
      const double w = ps_.distance(a, b);
      if (w < best_w) {
        best_w = w;
        best_edge = cand;
      }
    };
    for (int a = 0; a < n_; ++a)
      for (int b : knn_[a]) consider(a, b);
    if (best_edge.u < 0) return false;
    edges_.erase(removed);
    --deg_[removed.u];
    --deg_[removed.v];
    edges_.insert(best_edge);
    ++deg_[best_edge.u];
    ++deg_[best_edge.v];
    return true;
  }

  bool improve_swap(Edge victim) { return reroute(victim, true); }

  // Drive every vertex degree to <= k; false if stuck.
  bool repair() {
    for (int guard = 0; guard < 4 * n_; ++guard) {
      int violator = -1;
      for (int v = 0; v < n_; ++v)
        if (deg_[v] > k_) {
          violator = v;
          break;
        }
      if (violator < 0) return true;
      std::vector<Edge> around;
      for (const Edge& e : edges_)
        if (e.u == violator || e.v == violator) around.push_back(e);
      std::sort(around.begin(), around.end(), [&](Edge a, Edge b) {
        return edge_length(ps_, a) > edge_length(ps_, b);
      });
      bool moved = false;
      for (const Edge& e : around)
        if (reroute(e, false)) {
          moved = true;
          break;
        }
      if (!moved) return false;
    }
    return false;
  }

  const PointSet& ps_;
  int n_;
  int k_;
  std::vector<std::vector<int>> knn_;
  std::set<Edge> edges_;
  std::vector<int> deg_;
};

}  // namespace

MstKResult mst_k(const PointSet& ps, int max_degree) {
  const int n = ps.size();
  if (n < 2) throw std::invalid_argument("mst_k: requires n >= 2");
  if (max_degree < 2) throw std::invalid_argument("mst_k: requires k >= 2");
  if (max_degree >= n - 1) {
    auto [tree, len] = mst(ps);
    return {std::move(tree), len, true};
  }
  if (max_degree == 2 && n <= 18) return hamiltonian_path_dp(ps);
  if (n <= 16) {
    MstKResult res;
    if (mst_k_branch_bound(ps, max_degree, 200000, &res)) return res;
  }
  return DegreeBoundedSearch(ps, max_degree).run();
}

}  // namespace subeuclid
