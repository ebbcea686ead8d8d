#include "subeuclid/local_moves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace subeuclid {

double shortcut_saving(std::span<const double> p, std::span<const double> q,
                       std::span<const double> r, std::span<const double> s) {
  return point_distance(p, q) + point_distance(q, r) + point_distance(r, s) -
         point_distance(p, s);
}

RepairFourResult repair_four(std::span<const double> p1, std::span<const double> s1,
                             std::span<const double> p2, std::span<const double> s2,
                             std::span<const double> center, double delta) {
  if (delta < 0) throw std::invalid_argument("repair_four: delta must be >= 0");
  const std::array<std::span<const double>, 4> pts = {p1, s1, p2, s2};
  std::array<double, 4> radial{};
  for (int i = 0; i < 4; ++i) {
    radial[i] = point_distance(pts[i], center);
    if (radial[i] <= 0)
      throw std::invalid_argument("repair_four: point coincides with the center");
  }
  auto angle = [&](int i, int j) {
    double dot = 0;
    for (std::size_t k = 0; k < center.size(); ++k)
      dot += (pts[i][k] - center[k]) * (pts[j][k] - center[k]);
    const double c = std::clamp(dot / (radial[i] * radial[j]), -1.0, 1.0);
    return std::acos(c);
  };
  static constexpr std::array<std::array<std::pair<int, int>, 2>, 3> kPairings = {{
      {{{0, 1}, {2, 3}}},
      {{{0, 2}, {1, 3}}},
      {{{0, 3}, {1, 2}}},
  }};
  const double half_pi = std::acos(0.0);
  RepairFourResult best;
  best.total_length = std::numeric_limits<double>::infinity();
  bool best_acute = false;
  for (const auto& pairing : kPairings) {
    double total = 0;
    bool acute = false;
    for (const auto& [i, j] : pairing) {
      total += point_distance(pts[i], pts[j]);
      if (angle(i, j) <= half_pi + 1e-12) acute = true;
    }
    const bool take = best.total_length == std::numeric_limits<double>::infinity() ||
                      (acute && !best_acute) ||
                      (acute == best_acute && total < best.total_length);
    if (take) {
      best.pairing = pairing;
      best.total_length = total;
      best_acute = acute;
    }
  }
  return best;
}

namespace {

// Orders the cycle as v -> ... -> v_excl where (v_excl, v) is the edge that
// gets removed; `away` is v's neighbor kept adjacent.
std::vector<int> orient_from(const std::vector<int>& cycle, int v, int removed_nbr) {
  const int m = static_cast<int>(cycle.size());
  int pos = static_cast<int>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin());
  std::vector<int> out;
  out.reserve(m);
  const int next = cycle[(pos + 1) % m];
  const int step = (next == removed_nbr) ? -1 : 1;
  for (int i = 0; i < m; ++i) out.push_back(cycle[((pos + step * i) % m + m) % m]);
  return out;  // out.front() == v, out.back() == removed_nbr
}

}  // namespace

TwoFactor merge_cycles(const PointSet& ps, const TwoFactor& f, int x, int y) {
  int cx = -1, cy = -1;
  for (std::size_t i = 0; i < f.cycles.size(); ++i) {
    const auto& cyc = f.cycles[i];
    if (std::find(cyc.begin(), cyc.end(), x) != cyc.end()) cx = static_cast<int>(i);
    if (std::find(cyc.begin(), cyc.end(), y) != cyc.end()) cy = static_cast<int>(i);
  }
  if (cx < 0 || cy < 0)
    throw std::invalid_argument("merge_cycles: vertex not covered by the 2-factor");
  if (cx == cy)
    throw std::invalid_argument("merge_cycles: vertices lie on the same cycle");

  auto neighbors = [](const std::vector<int>& cyc, int v) {
    const int m = static_cast<int>(cyc.size());
    int pos = static_cast<int>(std::find(cyc.begin(), cyc.end(), v) - cyc.begin());
    return std::pair<int, int>{cyc[(pos + m - 1) % m], cyc[(pos + 1) % m]};
  };
  auto [xp, xn] = neighbors(f.cycles[cx], x);
  auto [yp, yn] = neighbors(f.cycles[cy], y);

  double best = std::numeric_limits<double>::infinity();
  int best_xq = xp, best_yq = yp;
  for (int xq : {xp, xn})
    for (int yq : {yp, yn}) {
      const double inc = ps.distance(x, y) + ps.distance(xq, yq) -
                         ps.distance(x, xq) - ps.distance(y, yq);
      if (inc < best) {
        best = inc;
        best_xq = xq;
        best_yq = yq;
      }
    }

  // New cycle: x ... best_xq, then best_yq ... y, closed by (y, x).
  auto path_x = orient_from(f.cycles[cx], x, best_xq);
  auto path_y = orient_from(f.cycles[cy], y, best_yq);
  std::vector<int> merged = path_x;
  merged.insert(merged.end(), path_y.rbegin(), path_y.rend());

  TwoFactor out;
  for (std::size_t i = 0; i < f.cycles.size(); ++i)
    if (static_cast<int>(i) != cx && static_cast<int>(i) != cy)
      out.cycles.push_back(f.cycles[i]);
  out.cycles.push_back(std::move(merged));
  return out;
}

PatchResult patch_to_tour(const PointSet& ps, const TwoFactor& f) {
  PatchResult res;
  TwoFactor cur = f;
  while (cur.cycles.size() > 1) {
    // Closest inter-cycle vertex pair.
    int bx = -1, by = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cur.cycles.size(); ++i)
      for (std::size_t j = i + 1; j < cur.cycles.size(); ++j)
        for (int u : cur.cycles[i])
          for (int v : cur.cycles[j]) {
            const double d = ps.distance(u, v);
            if (d < bd) {
              bd = d;
              bx = u;
              by = v;
            }
          }
    const double before = structure_length(ps, cur.edges());
    cur = merge_cycles(ps, cur, bx, by);
    res.merge_costs.push_back(structure_length(ps, cur.edges()) - before);
  }
  res.tour.order = cur.cycles.empty() ? std::vector<int>{} : cur.cycles[0];
  return res;
}

std::vector<std::vector<int>> find_isolated_clusters(const PointSet& ps, int m,
                                                     double eps, double isolation) {
  if (m < 1) throw std::invalid_argument("find_isolated_clusters: m >= 1");
  if (!(eps > 0) || !(eps < isolation))
    throw std::invalid_argument("find_isolated_clusters: requires 0 < eps < D");
  const int n = ps.size();
  const int d = ps.dim();
  std::vector<std::vector<int>> out;
  if (n == 0) return out;

  // Grid hash at cell size D: points within D share or neighbor a cell.
  std::map<std::vector<long>, std::vector<int>> grid;
  std::vector<long> key(d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k)
      key[k] = static_cast<long>(std::floor(ps.coord(i, k) / isolation));
    grid[key].push_back(i);
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double iso2 = isolation * isolation;
  std::vector<long> nb(d);
  for (const auto& [cell, members] : grid) {
    // Enumerate this cell against itself and all neighbor cells.
    std::vector<int> offsets(d, -1);
    for (;;) {
      for (int k = 0; k < d; ++k) nb[k] = cell[k] + offsets[k];
      auto it = grid.find(nb);
      if (it != grid.end() && !(nb < cell)) {
        for (int a : members)
          for (int b : it->second) {
            if (nb == cell && b <= a) continue;
            if (squared_distance(ps.point(a), ps.point(b)) <= iso2) {
              int ra = find(a), rb = find(b);
              if (ra != rb) parent[ra] = rb;
            }
          }
      }
      int k = 0;
      while (k < d && offsets[k] == 1) offsets[k++] = -1;
      if (k == d) break;
      ++offsets[k];
    }
  }
  std::map<int, std::vector<int>> comps;
  for (int v = 0; v < n; ++v) comps[find(v)].push_back(v);
  for (auto& [root, verts] : comps) {
    if (static_cast<int>(verts.size()) != m) continue;
    double diam2 = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        diam2 = std::max(diam2,
                         squared_distance(ps.point(verts[i]), ps.point(verts[j])));
    if (diam2 <= 4 * eps * eps) {
      std::sort(verts.begin(), verts.end());
      out.push_back(verts);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

}  // namespace subeuclid
