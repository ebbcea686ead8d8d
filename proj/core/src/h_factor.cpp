#include "subeuclid/h_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace subeuclid {

namespace {

// Cheapest embedding of the pattern onto the given vertices.
std::pair<double, std::vector<Edge>> best_embedding(const PointSet& ps,
                                                    const HPattern& pattern,
                                                    const std::vector<int>& verts) {
  const int h = pattern.size;
  std::vector<int> perm(h);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<Edge> best_edges;
  do {
    double len = 0;
    for (const Edge& pe : pattern.edges)
      len += ps.distance(verts[perm[pe.u]], verts[perm[pe.v]]);
    if (len < best) {
      best = len;
      best_edges.clear();
      for (const Edge& pe : pattern.edges)
        best_edges.push_back(make_edge(verts[perm[pe.u]], verts[perm[pe.v]]));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(best_edges.begin(), best_edges.end());
  return {best, best_edges};
}

HFactorResult exact_dp(const PointSet& ps, const HPattern& pattern) {
  const int n = ps.size();
  const int h = pattern.size;
  const int groups = n / h;
  const double inf = std::numeric_limits<double>::infinity();
  // cost[mask] for |mask| == h: cheapest embedding on that vertex subset.
  // dp[mask]: cheapest exact partition of `mask` into h-subsets.
  std::vector<double> dp(1u << n, inf);
  dp[0] = 0;
  std::vector<unsigned> group_of(1u << n, 0);  // chosen group at this mask

  // Enumerate h-subsets once; costs live in a dense array indexed by mask.
  std::vector<double> subset_cost(1u << n, inf);
  std::vector<int> verts;
  std::vector<int> comb(h);
  std::iota(comb.begin(), comb.end(), 0);
  for (;;) {
    unsigned mask = 0;
    verts.clear();
    for (int i : comb) {
      mask |= 1u << i;
      verts.push_back(i);
    }
    subset_cost[mask] = best_embedding(ps, pattern, verts).first;
    int i = h - 1;
    while (i >= 0 && comb[i] == n - h + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < h; ++j) comb[j] = comb[j - 1] + 1;
  }

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % h != 0) continue;
    const int anchor = __builtin_ctz(mask);
    // Enumerate h-subsets of mask containing the anchor.
    const unsigned rest = mask & ~(1u << anchor);
    std::vector<int> pool;
    for (int v = anchor + 1; v < n; ++v)
      if (rest & (1u << v)) pool.push_back(v);
    const int p = static_cast<int>(pool.size());
    if (p < h - 1) continue;
    std::vector<int> pick(h - 1);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      unsigned gmask = 1u << anchor;
      for (int i : pick) gmask |= 1u << pool[i];
      const double cand = dp[mask & ~gmask] + subset_cost[gmask];
      if (cand < dp[mask]) {
        dp[mask] = cand;
        group_of[mask] = gmask;
      }
      if (h == 1) break;
      int i = h - 2;
      while (i >= 0 && pick[i] == p - (h - 1) + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < h - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  // Best mask covering exactly groups*h vertices.
  unsigned best_mask = 0;
  double best = inf;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == groups * h && dp[mask] < best) {
      best = dp[mask];
      best_mask = mask;
    }

  HFactorResult res;
  res.factor.pattern = pattern;
  res.length = best;
  res.exact = true;
  unsigned mask = best_mask;
  while (mask) {
    const unsigned gmask = group_of[mask];
    std::vector<int> verts_g;
    for (int v = 0; v < n; ++v)
      if (gmask & (1u << v)) verts_g.push_back(v);
    auto [cost, edges] = best_embedding(ps, pattern, verts_g);
    res.factor.groups.push_back(HFactor::Group{verts_g, edges});
    mask &= ~gmask;
  }
  std::reverse(res.factor.groups.begin(), res.factor.groups.end());
  return res;
}

HFactorResult greedy(const PointSet& ps, const HPattern& pattern) {
  const int n = ps.size();
  const int h = pattern.size;
  const int groups = n / h;
  HFactorResult res;
  res.factor.pattern = pattern;
  res.exact = false;
  std::vector<char> used(n, 0);
  for (int g = 0; g < groups; ++g) {
    int anchor = -1;
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        anchor = v;
        break;
      }
    // Candidates: nearest unused neighbors of the anchor.
    std::vector<std::pair<double, int>> near;
    for (int v = 0; v < n; ++v)
      if (!used[v] && v != anchor) near.push_back({ps.distance(anchor, v), v});
    std::sort(near.begin(), near.end());
    const int cand = std::min<int>(static_cast<int>(near.size()), std::max(8, h));
    std::vector<int> pool;
    for (int i = 0; i < cand; ++i) pool.push_back(near[i].second);
    // Try every (h-1)-combination from the candidate pool.
    std::vector<int> pick(h - 1);
    std::iota(pick.begin(), pick.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_verts;
    std::vector<Edge> best_edges;
    for (;;) {
      std::vector<int> verts{anchor};
      for (int i : pick) verts.push_back(pool[i]);
      auto [cost, edges] = best_embedding(ps, pattern, verts);
      if (cost < best) {
        best = cost;
        best_verts = verts;
        best_edges = edges;
      }
      if (h == 1) break;
      int i = h - 2;
      while (i >= 0 && pick[i] == cand - (h - 1) + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < h - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    for (int v : best_verts) used[v] = 1;
    res.factor.groups.push_back(HFactor::Group{best_verts, best_edges});
    res.length += best;
  }
  return res;
}

}  // namespace

HFactorResult h_factor(const PointSet& ps, const HPattern& pattern) {
  const int n = ps.size();
  const int h = pattern.size;
  if (h < 2 || h > 8) throw std::invalid_argument("h_factor: requires 2 <= |H| <= 8");
  if (n < h) throw std::invalid_argument("h_factor: requires n >= |H|");
  for (const Edge& e : pattern.edges)
    if (e.u < 0 || e.v < 0 || e.u >= h || e.v >= h || e.u >= e.v)
      throw std::invalid_argument("h_factor: malformed pattern edge");
  if (n <= 20) return exact_dp(ps, pattern);
  return greedy(ps, pattern);
}

}  // namespace subeuclid
