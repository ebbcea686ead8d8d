#include "subeuclid/held_karp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "subeuclid/errors.hpp"
#include "subeuclid/lp.hpp"

namespace subeuclid {

namespace {

constexpr double kCutTol = 1e-7;
constexpr double kDegTol = 1e-7;

double recompute_crossing(const FractionalSolution& weights,
                          const std::vector<int>& subset) {
  std::vector<char> in(weights.n, 0);
  for (int v : subset) in[v] = 1;
  double w = 0;
  for (const auto& [e, x] : weights.weights)
    if (in[e.u] != in[e.v]) w += x;
  return w;
}

}  // namespace

CutCertificate stoer_wagner(const FractionalSolution& weights) {
  const int n = weights.n;
  if (n < 2) throw std::invalid_argument("stoer_wagner: requires n >= 2");

  // Disconnected support: the component of vertex 0 is a zero cut.
  {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [e, x] : weights.weights)
      if (x != 0.0) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    if (count < n) {
      CutCertificate cert;
      for (int v = 0; v < n; ++v)
        if (seen[v]) cert.subset.push_back(v);
      cert.crossing_weight = recompute_crossing(weights, cert.subset);
      return cert;
    }
  }

  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const auto& [e, x] : weights.weights) w[e.u][e.v] = w[e.v][e.u] = x;
  std::vector<std::vector<int>> groups(n);
  for (int v = 0; v < n; ++v) groups[v] = {v};
  std::vector<char> active(n, 1);

  CutCertificate best;
  best.crossing_weight = std::numeric_limits<double>::infinity();
  int remaining = n;
  while (remaining > 1) {
    // Maximum adjacency order over the active vertices.
    std::vector<double> conn(n, 0.0);
    std::vector<char> added(n, 0);
    int first = 0;
    while (!active[first]) ++first;
    added[first] = 1;
    for (int v = 0; v < n; ++v)
      if (active[v] && !added[v]) conn[v] = w[first][v];
    int s = first, t = first;
    for (int step = 1; step < remaining; ++step) {
      int next = -1;
      for (int v = 0; v < n; ++v)
        if (active[v] && !added[v] && (next == -1 || conn[v] > conn[next])) next = v;
      added[next] = 1;
      s = t;
      t = next;
      for (int v = 0; v < n; ++v)
        if (active[v] && !added[v]) conn[v] += w[next][v];
    }
    const double phase_cut = conn[t];
    if (phase_cut < best.crossing_weight) {
      best.crossing_weight = phase_cut;
      best.subset = groups[t];
    }
    // Merge t into s.
    active[t] = 0;
    --remaining;
    groups[s].insert(groups[s].end(), groups[t].begin(), groups[t].end());
    for (int v = 0; v < n; ++v)
      if (active[v] && v != s) {
        w[s][v] += w[t][v];
        w[v][s] = w[s][v];
      }
  }
  std::sort(best.subset.begin(), best.subset.end());
  best.crossing_weight = recompute_crossing(weights, best.subset);
  return best;
}

FeasibilityReport hk_feasible(const FractionalSolution& sol) {
  FeasibilityReport report;
  if (sol.n < 3) {
    report.violation = "fewer than 3 vertices";
    return report;
  }
  if (auto v = validate_fractional(sol, kDegTol); !v) {
    report.violation = v.message;
    return report;
  }
  auto deg = sol.vertex_degrees();
  for (int v = 0; v < sol.n; ++v)
    if (std::fabs(deg[v] - 2.0) > kDegTol) {
      report.vertex = v;
      report.violation = "vertex " + std::to_string(v) + " has degree-weight " +
                         std::to_string(deg[v]);
      return report;
    }
  auto cut = stoer_wagner(sol);
  if (cut.crossing_weight < 2.0 - kCutTol) {
    report.violation = "cut of weight " + std::to_string(cut.crossing_weight);
    report.cut = std::move(cut);
    return report;
  }
  report.feasible = true;
  return report;
}

HkResult hk_value(const PointSet& ps, const Constraints& cons) {
  const int n = ps.size();
  if (n < 3) throw std::invalid_argument("hk_value: requires n >= 3");
  if (n > 300) throw std::invalid_argument("hk_value: hard cap at n = 300");
  if (auto v = validate_constraints(n, cons); !v)
    throw InfeasibleError("hk_value: " + v.message);

  const int m = n * (n - 1) / 2;
  std::vector<Edge> var_edge;
  var_edge.reserve(m);
  std::vector<double> cost;
  cost.reserve(m);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      var_edge.push_back(Edge{u, v});
      cost.push_back(ps.distance(u, v));
    }
  auto var_of = [n](Edge e) {
    // Lexicographic index of (u,v), u < v.
    return e.u * n - e.u * (e.u + 1) / 2 + (e.v - e.u - 1);
  };

  std::vector<double> lo(m, 0.0), hi(m, 1.0);
  for (const Edge& e : cons.include) lo[var_of(e)] = 1.0;
  for (const Edge& e : cons.exclude) hi[var_of(e)] = 0.0;

  IncrementalSimplex simplex(cost, lo, hi);
  for (int v = 0; v < n; ++v) {
    LpRow row;
    row.sense = RowSense::Eq;
    row.rhs = 2.0;
    for (int u = 0; u < n; ++u)
      if (u != v) row.terms.push_back({var_of(make_edge(u, v)), 1.0});
    simplex.add_row(row);
  }

  HkResult res;
  const int cut_cap = 25 * n + 100;
  for (;;) {
    LpSolution sol = simplex.solve();
    if (sol.status == LpStatus::Infeasible)
      throw InfeasibleError("hk_value: constraints admit no LP point");
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("hk_value: LP solver failed to converge");
    res.value = sol.value;
    res.solution = FractionalSolution{};
    res.solution.n = n;
    for (int j = 0; j < m; ++j) {
      const double x = std::clamp(sol.x[j], 0.0, 1.0);
      if (x > 1e-12) res.solution.set(var_edge[j], x);
    }
    auto cut = stoer_wagner(res.solution);
    if (cut.crossing_weight >= 2.0 - kCutTol) {
      res.converged = true;
      return res;
    }
    if (res.cuts_added >= cut_cap) {
      res.converged = false;
      return res;
    }
    std::vector<char> in(n, 0);
    for (int v : cut.subset) in[v] = 1;
    LpRow row;
    row.sense = RowSense::Ge;
    row.rhs = 2.0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (in[u] != in[v]) row.terms.push_back({var_of(Edge{u, v}), 1.0});
    simplex.add_row(row);
    ++res.cuts_added;
  }
}

FractionalSolution hk_extend_edge_pair(const FractionalSolution& sol) {
  if (auto rep = hk_feasible(sol); !rep)
    throw InfeasibleError("hk_extend_edge_pair: input infeasible: " + rep.violation);
  const int n = sol.n;
  FractionalSolution out;
  out.n = n + 2;
  const double factor = 1.0 - 1.0 / n;
  for (const auto& [e, w] : sol.weights) out.set(e, w * factor);
  const int y = n, z = n + 1;
  out.set(Edge{y, z}, 1.0);
  for (int v = 0; v < n; ++v) {
    out.set(make_edge(v, y), 1.0 / n);
    out.set(make_edge(v, z), 1.0 / n);
  }
  return out;
}

FractionalSolution hk_extend_independent(const FractionalSolution& sol, int k) {
  if (k < 1) throw std::invalid_argument("hk_extend_independent: requires k >= 1");
  if (2 * k >= sol.n)
    throw std::invalid_argument("hk_extend_independent: requires k < n/2");
  if (auto rep = hk_feasible(sol); !rep)
    throw InfeasibleError("hk_extend_independent: input infeasible: " + rep.violation);
  const int n = sol.n;
  FractionalSolution out;
  out.n = n + k;
  const double factor = 1.0 - static_cast<double>(k) / n;
  for (const auto& [e, w] : sol.weights) out.set(e, w * factor);
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < n; ++v) out.set(make_edge(v, n + i), 2.0 / n);
  return out;
}

FractionalSolution hk_patch(const std::vector<FractionalSolution>& blocks,
                            const std::vector<PatchInterface>& interfaces) {
  const int s = static_cast<int>(blocks.size());
  if (s < 1) throw std::invalid_argument("hk_patch: requires at least one block");
  if (interfaces.size() != blocks.size())
    throw std::invalid_argument("hk_patch: one interface per block required");
  if (s == 1) return blocks[0];

  std::vector<int> offset(s, 0);
  for (int i = 1; i < s; ++i) offset[i] = offset[i - 1] + blocks[i - 1].n;
  const int total = offset[s - 1] + blocks[s - 1].n;

  auto check_unit = [&](int i, int a, int b, const char* which) {
    const auto& blk = blocks[i];
    if (a < 0 || b < 0 || a >= blk.n || b >= blk.n || a == b)
      throw std::invalid_argument("hk_patch: bad terminal in block " +
                                  std::to_string(i));
    const double w = blk.weight(make_edge(a, b));
    if (std::fabs(w - 1.0) > 1e-9)
      throw std::invalid_argument("hk_patch: designated " + std::string(which) +
                                  " edge of block " + std::to_string(i) +
                                  " does not carry weight 1");
  };
  for (int i = 1; i < s; ++i)
    check_unit(i, interfaces[i].terminals[0], interfaces[i].terminals[1], "entry");
  for (int i = 0; i + 1 < s; ++i)
    check_unit(i, interfaces[i].terminals[2], interfaces[i].terminals[3], "exit");
  for (int i = 1; i + 1 < s; ++i) {
    const auto& t = interfaces[i].terminals;
    std::set<int> uniq(t.begin(), t.end());
    if (uniq.size() != 4)
      throw std::invalid_argument("hk_patch: interface terminals of block " +
                                  std::to_string(i) + " must be distinct");
  }

  FractionalSolution out;
  out.n = total;
  for (int i = 0; i < s; ++i) {
    std::set<Edge> drop;
    if (i >= 1)
      drop.insert(make_edge(interfaces[i].terminals[0], interfaces[i].terminals[1]));
    if (i + 1 < s)
      drop.insert(make_edge(interfaces[i].terminals[2], interfaces[i].terminals[3]));
    for (const auto& [e, w] : blocks[i].weights) {
      if (drop.count(e)) continue;
      out.set(make_edge(e.u + offset[i], e.v + offset[i]), w);
    }
  }
  for (int i = 0; i + 1 < s; ++i) {
    const int x3 = interfaces[i].terminals[2] + offset[i];
    const int x4 = interfaces[i].terminals[3] + offset[i];
    const int y1 = interfaces[i + 1].terminals[0] + offset[i + 1];
    const int y2 = interfaces[i + 1].terminals[1] + offset[i + 1];
    out.set(make_edge(x3, y1), 1.0);
    out.set(make_edge(x4, y2), 1.0);
  }
  return out;
}

namespace {

void require_ring_k(int k) {
  if (k < 12 || k % 4 != 0)
    throw std::invalid_argument("ring construction: requires k >= 12, k % 4 == 0");
}

}  // namespace

PointSet build_ring_points(int k) {
  require_ring_k(k);
  const double pi = std::numbers::pi;
  std::vector<double> coords;
  coords.reserve(2 * (3 * k + 2));
  for (int j = 0; j < k; ++j) {
    const double a = 2.0 * pi * j / k;
    coords.push_back(std::cos(a));
    coords.push_back(std::sin(a));
  }
  for (int j = 0; j < 2 * k; ++j) {
    const double a = pi * j / k;
    coords.push_back(4.0 * std::cos(a));
    coords.push_back(4.0 * std::sin(a));
  }
  coords.push_back(-2.0);
  coords.push_back(0.0);
  coords.push_back(2.0);
  coords.push_back(0.0);
  return PointSet(2, std::move(coords));
}

RingConstruction build_ring_fractional(RingPassMode mode, int k) {
  require_ring_k(k);
  const double pi = std::numbers::pi;
  const int ring = 3 * k + 2;
  const int gap_neg = 3 * k;      // (-2, 0)
  const int gap_pos = 3 * k + 1;  // (+2, 0)
  auto inner = [&](int j) { return ((j % k) + k) % k; };
  auto outer = [&](int j) { return k + (((j % (2 * k)) + 2 * k) % (2 * k)); };

  // Special outer pairs next to the gaps and the entry triples.
  const std::array<int, 2> y = {outer(k), outer(k + 1)};    // near (-2,0)
  const std::array<int, 2> z = {outer(0), outer(1)};        // near (+2,0)
  const std::array<int, 2> a = {inner(k / 2), inner(k / 2 - 1)};
  const std::array<int, 2> b = {inner(0), inner(1)};

  std::vector<int> triple_centers;  // outer indices (raw j) of entry triples
  const int j150 = (5 * k + 3) / 6;  // nearest outer slot to 150 degrees
  const int j225 = (5 * k + 2) / 4;  // 225 degrees
  triple_centers.push_back(j150);
  triple_centers.push_back(j225);
  if (mode == RingPassMode::TwoPass) {
    triple_centers.push_back(k / 4);            // 45 degrees
    triple_centers.push_back((11 * k + 3) / 6); // 330 degrees
  }

  // Guard: all special outer vertices must be pairwise distinct.
  {
    std::set<int> used = {outer(k), outer(k + 1), outer(0), outer(1)};
    for (int c : triple_centers)
      for (int d = -1; d <= 1; ++d)
        if (!used.insert(outer(c + d)).second)
          throw std::logic_error("ring construction: special vertices collide");
  }

  FractionalSolution frac;
  std::vector<double> coords = build_ring_points(k).coords();
  std::set<std::pair<int, int>> covered_outer, covered_inner;  // consecutive pairs

  auto add_half_triangle = [&](int p, int q, int r) {
    frac.set(make_edge(p, q), 0.5);
    frac.set(make_edge(p, r), 0.5);
    frac.set(make_edge(q, r), 0.5);
  };

  // Gap triangles.
  add_half_triangle(y[0], y[1], gap_neg);
  add_half_triangle(a[0], a[1], gap_neg);
  add_half_triangle(z[0], z[1], gap_pos);
  add_half_triangle(b[0], b[1], gap_pos);
  covered_outer.insert({k, k + 1});
  covered_outer.insert({0, 1});
  covered_inner.insert({k / 2 - 1, k / 2});
  covered_inner.insert({0, 1});

  // Entry triples and entry vertices at radius 14 along the triple center.
  std::vector<int> entries;
  for (std::size_t t = 0; t < triple_centers.size(); ++t) {
    const int c = triple_centers[t];
    add_half_triangle(outer(c - 1), outer(c), outer(c + 1));
    const int lo = ((c - 1) % (2 * k) + 2 * k) % (2 * k);
    covered_outer.insert({lo, lo + 1});
    covered_outer.insert({(lo + 1) % (2 * k), (lo + 1) % (2 * k) + 1});
    const int entry_id = ring + static_cast<int>(t);
    const double ang = pi * c / k;
    coords.push_back(14.0 * std::cos(ang));
    coords.push_back(14.0 * std::sin(ang));
    frac.set(make_edge(outer(c), entry_id), 1.0);
    entries.push_back(entry_id);
  }
  // Close the standalone solution through the entries.
  if (mode == RingPassMode::OnePass) {
    frac.set(make_edge(entries[0], entries[1]), 1.0);
  } else {
    frac.set(make_edge(entries[0], entries[2]), 1.0);
    frac.set(make_edge(entries[1], entries[3]), 1.0);
  }

  // Weight-1 arcs between all remaining consecutive points on each circle.
  for (int j = 0; j < 2 * k; ++j) {
    if (covered_outer.count({j, j + 1})) continue;
    frac.set(make_edge(outer(j), outer(j + 1)), 1.0);
  }
  for (int j = 0; j < k; ++j) {
    if (covered_inner.count({j, j + 1})) continue;
    frac.set(make_edge(inner(j), inner(j + 1)), 1.0);
  }

  RingConstruction rc;
  rc.ring_size = ring;
  rc.entries = entries;
  frac.n = ring + static_cast<int>(entries.size());
  rc.fractional = std::move(frac);
  rc.points = PointSet(2, std::move(coords));
  return rc;
}

double ring_internal_cost(const RingConstruction& rc) {
  double total = 0;
  for (const auto& [e, w] : rc.fractional.weights)
    if (e.u < rc.ring_size && e.v < rc.ring_size)
      total += w * rc.points.distance(e.u, e.v);
  return total;
}

}  // namespace subeuclid
