#include "subeuclid/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "subeuclid/errors.hpp"

namespace subeuclid {

namespace {

constexpr double kTieTol = 1e-12;

// Strict improvement, with lexicographic edge-list tie-breaking.
bool improves(double len, const std::vector<Edge>& edges, double best_len,
              const std::vector<Edge>& best_edges) {
  if (len < best_len - kTieTol) return true;
  if (len > best_len + kTieTol) return false;
  return edges < best_edges;
}

std::vector<Edge> sorted_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<std::vector<double>> distance_matrix(const PointSet& ps) {
  const int n = ps.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = ps.distance(i, j);
  return d;
}

}  // namespace

namespace detail {

std::pair<Tour, double> tsp_permutation(const PointSet& ps) {
  const int n = ps.size();
  const auto d = distance_matrix(ps);
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  Tour best;
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<Edge> best_edges;
  do {
    double len = d[0][perm.front()] + d[perm.back()][0];
    for (int i = 0; i + 1 < n - 1; ++i) len += d[perm[i]][perm[i + 1]];
    Tour t;
    t.order.push_back(0);
    t.order.insert(t.order.end(), perm.begin(), perm.end());
    auto edges = sorted_edges(t.edges());
    if (improves(len, edges, best_len, best_edges)) {
      best = std::move(t);
      best_len = len;
      best_edges = std::move(edges);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_len};
}

std::pair<Tour, double> tsp_bitmask(const PointSet& ps) {
  const int n = ps.size();
  const auto d = distance_matrix(ps);
  const int full = (1 << (n - 1)) - 1;  // subsets over vertices 1..n-1
  const double inf = std::numeric_limits<double>::infinity();
  // dp[mask][j]: cheapest path from vertex 0 through `mask`, ending at j+1.
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n - 1, inf));
  std::vector<std::vector<int>> from(full + 1, std::vector<int>(n - 1, -1));
  for (int j = 0; j < n - 1; ++j) dp[1 << j][j] = d[0][j + 1];
  for (int mask = 1; mask <= full; ++mask)
    for (int j = 0; j < n - 1; ++j) {
      if (!(mask & (1 << j)) || dp[mask][j] == inf) continue;
      const double base = dp[mask][j];
      for (int k = 0; k < n - 1; ++k) {
        if (mask & (1 << k)) continue;
        const int nmask = mask | (1 << k);
        const double cand = base + d[j + 1][k + 1];
        if (cand < dp[nmask][k]) {
          dp[nmask][k] = cand;
          from[nmask][k] = j;
        }
      }
    }
  double best_len = inf;
  int best_end = -1;
  for (int j = 0; j < n - 1; ++j) {
    const double cand = dp[full][j] + d[j + 1][0];
    if (cand < best_len) {
      best_len = cand;
      best_end = j;
    }
  }
  Tour t;
  t.order.assign(n, 0);
  int mask = full, j = best_end;
  for (int pos = n - 1; pos >= 1; --pos) {
    t.order[pos] = j + 1;
    int pj = from[mask][j];
    mask ^= 1 << j;
    j = pj;
  }
  return {t, best_len};
}

}  // namespace detail

std::pair<Tour, double> tsp_oracle(const PointSet& ps) {
  const int n = ps.size();
  if (n < 3 || n > 18)
    throw std::invalid_argument("tsp_oracle: requires 3 <= n <= 18");
  if (n <= 10) return detail::tsp_permutation(ps);
  return detail::tsp_bitmask(ps);
}

namespace {

void matching_search(const std::vector<std::vector<double>>& d, unsigned used,
                     int n, double len, std::vector<Edge>& cur, double& best_len,
                     std::vector<Edge>& best_edges) {
  if (static_cast<int>(cur.size()) == n / 2) {
    auto edges = sorted_edges(cur);
    if (improves(len, edges, best_len, best_edges)) {
      best_len = len;
      best_edges = std::move(edges);
    }
    return;
  }
  int u = 0;
  while (used & (1u << u)) ++u;
  if (len >= best_len + kTieTol) {
    // Cannot prune on length alone because of tie-breaking; prune only when
    // strictly worse.
    return;
  }
  for (int v = u + 1; v < n; ++v) {
    if (used & (1u << v)) continue;
    cur.push_back(Edge{u, v});
    matching_search(d, used | (1u << u) | (1u << v), n, len + d[u][v], cur,
                    best_len, best_edges);
    cur.pop_back();
  }
}

}  // namespace

std::pair<Matching, double> matching_oracle(const PointSet& ps) {
  const int n = ps.size();
  if (n % 2 != 0) throw std::invalid_argument("matching_oracle: n must be even");
  if (n > 12) throw std::invalid_argument("matching_oracle: requires n <= 12");
  Matching m;
  double best_len = std::numeric_limits<double>::infinity();
  if (n == 0) return {m, 0.0};
  const auto d = distance_matrix(ps);
  std::vector<Edge> cur, best_edges;
  matching_search(d, 0, n, 0.0, cur, best_len, best_edges);
  m.edges = best_edges;
  return {m, best_len};
}

namespace {

struct TwoFactorSearch {
  const std::vector<std::vector<double>>& d;
  int n;
  int g;
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_cycles;
  std::vector<Edge> best_edges;
  std::vector<std::vector<int>> cur;

  void finish(double len) {
    std::vector<Edge> edges;
    for (const auto& cyc : cur) {
      const int m = static_cast<int>(cyc.size());
      for (int i = 0; i < m; ++i)
        edges.push_back(make_edge(cyc[i], cyc[(i + 1) % m]));
    }
    std::sort(edges.begin(), edges.end());
    if (improves(len, edges, best_len, best_edges)) {
      best_len = len;
      best_edges = std::move(edges);
      best_cycles = cur;
    }
  }

  double cycle_cost(const std::vector<int>& cyc) const {
    double len = 0;
    const int m = static_cast<int>(cyc.size());
    for (int i = 0; i < m; ++i) len += d[cyc[i]][cyc[(i + 1) % m]];
    return len;
  }

  // Enumerate distinct cycles on `verts` (anchor fixed first, orientation
  // canonicalized) and recurse on the remaining vertices.
  void cycles_on(std::vector<int>& verts, unsigned remaining, double len) {
    std::vector<int> rest(verts.begin() + 1, verts.end());
    std::sort(rest.begin(), rest.end());
    do {
      if (rest.size() >= 2 && rest.front() > rest.back()) continue;  // orientation
      std::vector<int> cyc;
      cyc.push_back(verts[0]);
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      const double c = cycle_cost(cyc);
      if (len + c >= best_len + kTieTol) continue;
      cur.push_back(cyc);
      partition(remaining, len + c);
      cur.pop_back();
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  void partition(unsigned remaining, double len) {
    if (!remaining) {
      finish(len);
      return;
    }
    int anchor = 0;
    while (!(remaining & (1u << anchor))) ++anchor;
    std::vector<int> pool;
    for (int v = anchor + 1; v < n; ++v)
      if (remaining & (1u << v)) pool.push_back(v);
    const int need = std::max(g, 3) - 1;
    const int p = static_cast<int>(pool.size());
    // Choose the rest of the anchor's cycle from the pool.
    for (unsigned pick = 0; pick < (1u << p); ++pick) {
      const int cnt = __builtin_popcount(pick);
      if (cnt < need) continue;
      const int leftover = p - cnt;
      if (leftover != 0 && leftover < std::max(g, 3)) continue;  // too few for any cycle
      std::vector<int> verts{anchor};
      unsigned rem = remaining & ~(1u << anchor);
      for (int v = 0; v < p; ++v)
        if (pick & (1u << v)) {
          verts.push_back(pool[v]);
          rem &= ~(1u << pool[v]);
        }
      cycles_on(verts, rem, len);
    }
  }
};

}  // namespace

std::pair<TwoFactor, double> two_factor_oracle(const PointSet& ps, int girth) {
  const int n = ps.size();
  const int g = std::max(girth, 3);
  if (n > 10) throw std::invalid_argument("two_factor_oracle: requires n <= 10");
  if (n < g)
    throw InfeasibleError("two_factor_oracle: infeasible, n < max(g,3)");
  const auto d = distance_matrix(ps);
  TwoFactorSearch search{d, n, girth, std::numeric_limits<double>::infinity(), {}, {}, {}};
  search.partition((1u << n) - 1, 0.0);
  if (!std::isfinite(search.best_len))
    throw InfeasibleError("two_factor_oracle: no feasible 2-factor");
  TwoFactor f;
  f.cycles = search.best_cycles;
  return {f, search.best_len};
}

std::pair<SpanningTree, double> mst_k_oracle(const PointSet& ps, int max_degree) {
  const int n = ps.size();
  if (n > 8) throw std::invalid_argument("mst_k_oracle: requires n <= 8");
  if (max_degree < 2) throw std::invalid_argument("mst_k_oracle: requires k >= 2");
  SpanningTree best;
  if (n <= 1) return {best, 0.0};
  const auto d = distance_matrix(ps);
  if (n == 2) {
    best.edges = {Edge{0, 1}};
    return {best, d[0][1]};
  }
  // Every labeled tree on n vertices is the decode of one Pruefer sequence.
  std::vector<int> code(n - 2, 0);
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<Edge> best_edges;
  for (;;) {
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];
    bool deg_ok = true;
    for (int v = 0; v < n && deg_ok; ++v)
      if (degree[v] > max_degree) deg_ok = false;
    if (deg_ok) {
      std::vector<int> deg = degree;
      std::vector<Edge> edges;
      double len = 0;
      unsigned leaves = 0;
      for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves |= 1u << v;
      for (int c : code) {
        const int leaf = __builtin_ctz(leaves);
        leaves &= ~(1u << leaf);
        edges.push_back(make_edge(leaf, c));
        len += d[leaf][c];
        if (--deg[c] == 1) leaves |= 1u << c;
      }
      const int a = __builtin_ctz(leaves);
      leaves &= ~(1u << a);
      const int b = __builtin_ctz(leaves);
      edges.push_back(make_edge(a, b));
      len += d[a][b];
      std::sort(edges.begin(), edges.end());
      if (improves(len, edges, best_len, best_edges)) {
        best_len = len;
        best_edges = std::move(edges);
      }
    }
    int pos = n - 3;
    while (pos >= 0 && code[pos] == n - 1) code[pos--] = 0;
    if (pos < 0) break;
    ++code[pos];
  }
  if (!std::isfinite(best_len))
    throw std::invalid_argument("mst_k_oracle: no tree satisfies the degree bound");
  best.edges = best_edges;
  return {best, best_len};
}

namespace {

struct HFactorSearch {
  const std::vector<std::vector<double>>& d;
  const HPattern& pattern;
  int n;
  int groups_needed;
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<HFactor::Group> best_groups;
  std::vector<Edge> best_edges;
  std::vector<HFactor::Group> cur;

  // Cheapest embedding of the pattern onto `verts`, with edge-list ties
  // resolved lexicographically.
  std::pair<double, std::vector<Edge>> embed(const std::vector<int>& verts) const {
    const int h = pattern.size;
    std::vector<int> perm(h);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<Edge> bedges;
    do {
      double len = 0;
      std::vector<Edge> edges;
      for (const Edge& pe : pattern.edges) {
        Edge m = make_edge(verts[perm[pe.u]], verts[perm[pe.v]]);
        len += d[m.u][m.v];
        edges.push_back(m);
      }
      std::sort(edges.begin(), edges.end());
      if (improves(len, edges, best, bedges)) {
        best = len;
        bedges = std::move(edges);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, bedges};
  }

  void search(unsigned remaining, double len) {
    const int h = pattern.size;
    if (static_cast<int>(cur.size()) == groups_needed) {
      std::vector<Edge> edges;
      for (const auto& g : cur) edges.insert(edges.end(), g.edges.begin(), g.edges.end());
      std::sort(edges.begin(), edges.end());
      if (improves(len, edges, best_len, best_edges)) {
        best_len = len;
        best_edges = edges;
        best_groups = cur;
      }
      return;
    }
    const int left = __builtin_popcount(remaining);
    const int groups_left = groups_needed - static_cast<int>(cur.size());
    if (left < groups_left * h) return;  // dead end
    int anchor = 0;
    while (!(remaining & (1u << anchor))) ++anchor;
    std::vector<int> pool;
    for (int v = anchor + 1; v < n; ++v)
      if (remaining & (1u << v)) pool.push_back(v);
    const int p = static_cast<int>(pool.size());
    // Option 1: the anchor starts a new group with h-1 companions.
    if (h - 1 <= p) {
      std::vector<int> comb(h - 1);
      std::iota(comb.begin(), comb.end(), 0);
      for (;;) {
        std::vector<int> verts{anchor};
        unsigned rem = remaining & ~(1u << anchor);
        for (int i : comb) {
          verts.push_back(pool[i]);
          rem &= ~(1u << pool[i]);
        }
        auto [cost, edges] = embed(verts);
        if (len + cost < best_len + kTieTol) {
          cur.push_back(HFactor::Group{verts, edges});
          search(rem, len + cost);
          cur.pop_back();
        }
        if (h == 1) break;
        int i = h - 2;
        while (i >= 0 && comb[i] == p - (h - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < h - 1; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
    // Option 2: the anchor is one of the omitted vertices.
    const int omitted_so_far = (n - left) - static_cast<int>(cur.size()) * h;
    if (omitted_so_far < n - groups_needed * h)
      search(remaining & ~(1u << anchor), len);
  }
};

}  // namespace

std::pair<HFactor, double> h_factor_oracle(const PointSet& ps, const HPattern& pattern) {
  const int n = ps.size();
  if (n > 9) throw std::invalid_argument("h_factor_oracle: requires n <= 9");
  if (pattern.size < 1 || pattern.size > 4)
    throw std::invalid_argument("h_factor_oracle: requires |H| <= 4");
  if (n < pattern.size)
    throw std::invalid_argument("h_factor_oracle: fewer points than |H|");
  const auto d = distance_matrix(ps);
  HFactorSearch search{d, pattern, n, n / pattern.size,
                       std::numeric_limits<double>::infinity(), {}, {}, {}};
  search.search((1u << n) - 1, 0.0);
  HFactor f;
  f.pattern = pattern;
  f.groups = search.best_groups;
  return {f, search.best_len};
}

std::pair<std::vector<int>, double> min_cut_oracle(const FractionalSolution& weights) {
  const int n = weights.n;
  if (n > 10) throw std::invalid_argument("min_cut_oracle: requires n <= 10");
  if (n < 2) throw std::invalid_argument("min_cut_oracle: requires n >= 2");
  double best = std::numeric_limits<double>::infinity();
  unsigned best_mask = 0;
  // Fix vertex n-1 outside S so each cut is enumerated once.
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    double w = 0;
    for (const auto& [e, x] : weights.weights) {
      const bool in_u = mask & (1u << e.u);
      const bool in_v = mask & (1u << e.v);
      if (in_u != in_v) w += x;
    }
    if (w < best - kTieTol || (w < best + kTieTol && mask < best_mask)) {
      best = w;
      best_mask = mask;
    }
  }
  std::vector<int> subset;
  for (int v = 0; v < n; ++v)
    if (best_mask & (1u << v)) subset.push_back(v);
  return {subset, best};
}

}  // namespace subeuclid
