#include "subeuclid/tour_ops.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace subeuclid {

namespace {
constexpr double kImproveTol = 1e-12;
}

double tour_length(const PointSet& ps, const Tour& t) {
  const int n = static_cast<int>(t.order.size());
  if (n < 2) return 0;
  double len = 0;
  for (int i = 0; i < n; ++i)
    len += ps.distance(t.order[i], t.order[(i + 1) % n]);
  return len;
}

Tour tour_2opt(const PointSet& ps, const Tour& t) {
  Tour cur = t;
  const int n = static_cast<int>(cur.order.size());
  if (n < 4) return cur;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n - 1 && !improved; ++i) {
      const int a = cur.order[i];
      const int b = cur.order[i + 1];
      const double dab = ps.distance(a, b);
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // same edge pair
        const int c = cur.order[j];
        const int d = cur.order[(j + 1) % n];
        const double delta =
            ps.distance(a, c) + ps.distance(b, d) - dab - ps.distance(c, d);
        if (delta < -kImproveTol) {
          std::reverse(cur.order.begin() + i + 1, cur.order.begin() + j + 1);
          improved = true;
          break;
        }
      }
    }
  }
  return cur;
}

Tour nearest_neighbor_tour(const PointSet& ps) {
  const int n = ps.size();
  Tour t;
  if (n == 0) return t;
  std::vector<char> used(n, 0);
  t.order.push_back(0);
  used[0] = 1;
  while (static_cast<int>(t.order.size()) < n) {
    const int cur = t.order.back();
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
    t.order.push_back(best);
    used[best] = 1;
  }
  return t;
}

Tour greedy_tour_from_fractional(const PointSet& ps, const FractionalSolution& frac) {
  const int n = frac.n;
  if (n < 3) throw std::invalid_argument("greedy_tour_from_fractional: n >= 3");
  std::vector<std::pair<double, Edge>> support;
  for (const auto& [e, w] : frac.weights)
    if (w > 1e-9) support.push_back({w, e});
  std::stable_sort(support.begin(), support.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<int> deg(n, 0);
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<std::vector<int>> adj(n);
  int picked = 0;
  auto try_edge = [&](Edge e) {
    if (deg[e.u] >= 2 || deg[e.v] >= 2) return;
    const int a = find(e.u), b = find(e.v);
    if (a == b && picked < n - 1) return;  // would close a subtour early
    if (a == b) return;                    // closing edge is implicit
    comp[a] = b;
    ++deg[e.u];
    ++deg[e.v];
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
    ++picked;
  };
  for (const auto& [w, e] : support) try_edge(e);
  // Stitch remaining path fragments by nearest endpoints.
  while (picked < n - 1) {
    int bu = -1, bv = -1;
    double bw = std::numeric_limits<double>::infinity();
    for (int u = 0; u < n; ++u) {
      if (deg[u] >= 2) continue;
      for (int v = u + 1; v < n; ++v) {
        if (deg[v] >= 2 || find(u) == find(v)) continue;
        const double w = ps.distance(u, v);
        if (w < bw) {
          bw = w;
          bu = u;
          bv = v;
        }
      }
    }
    try_edge(make_edge(bu, bv));
  }
  // Walk the single remaining path into a tour order.
  int start = 0;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) {
      start = v;
      break;
    }
  Tour t;
  std::vector<char> seen(n, 0);
  int cur = start, prev = -1;
  for (int i = 0; i < n; ++i) {
    t.order.push_back(cur);
    seen[cur] = 1;
    int next = -1;
    for (int v : adj[cur])
      if (v != prev && !seen[v]) {
        next = v;
        break;
      }
    if (next == -1) break;
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(t.order.size()) != n)
    throw std::logic_error("greedy_tour_from_fractional: fragmented walk");
  return t;
}

}  // namespace subeuclid
