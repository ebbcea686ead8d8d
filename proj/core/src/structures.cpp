#include "subeuclid/structures.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace subeuclid {

std::vector<Edge> Tour::edges() const {
  std::vector<Edge> out;
  const int n = static_cast<int>(order.size());
  if (n < 2) return out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(make_edge(order[i], order[(i + 1) % n]));
  return out;
}

std::vector<Edge> TwoFactor::edges() const {
  std::vector<Edge> out;
  for (const auto& cyc : cycles) {
    const int m = static_cast<int>(cyc.size());
    for (int i = 0; i < m; ++i) out.push_back(make_edge(cyc[i], cyc[(i + 1) % m]));
  }
  return out;
}

int TwoFactor::covered() const {
  int c = 0;
  for (const auto& cyc : cycles) c += static_cast<int>(cyc.size());
  return c;
}

HPattern HPattern::single_edge() { return {2, {Edge{0, 1}}}; }

HPattern HPattern::triangle() { return {3, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}}}; }

HPattern HPattern::path(int vertices) {
  HPattern p{vertices, {}};
  for (int i = 0; i + 1 < vertices; ++i) p.edges.push_back(Edge{i, i + 1});
  return p;
}

HPattern HPattern::star(int leaves) {
  HPattern p{leaves + 1, {}};
  for (int i = 1; i <= leaves; ++i) p.edges.push_back(Edge{0, i});
  return p;
}

std::vector<Edge> HFactor::edges() const {
  std::vector<Edge> out;
  for (const auto& g : groups) out.insert(out.end(), g.edges.begin(), g.edges.end());
  return out;
}

int HFactor::covered() const {
  int c = 0;
  for (const auto& g : groups) c += static_cast<int>(g.vertices.size());
  return c;
}

bool Constraints::includes(Edge e) const {
  return std::find(include.begin(), include.end(), e) != include.end();
}

bool Constraints::excludes(Edge e) const {
  return std::find(exclude.begin(), exclude.end(), e) != exclude.end();
}

Constraints Constraints::with_include(Edge e) const {
  Constraints c = *this;
  if (!c.includes(e)) c.include.push_back(e);
  return c;
}

Constraints Constraints::with_exclude(Edge e) const {
  Constraints c = *this;
  if (!c.excludes(e)) c.exclude.push_back(e);
  return c;
}

double FractionalSolution::weight(Edge e) const {
  auto it = weights.find(e);
  return it == weights.end() ? 0.0 : it->second;
}

void FractionalSolution::set(Edge e, double w) {
  if (w == 0.0)
    weights.erase(e);
  else
    weights[e] = w;
}

std::vector<double> FractionalSolution::vertex_degrees() const {
  std::vector<double> deg(n, 0.0);
  for (const auto& [e, w] : weights) {
    deg[e.u] += w;
    deg[e.v] += w;
  }
  return deg;
}

std::vector<int> edge_degrees(int n, const std::vector<Edge>& edges) {
  std::vector<int> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

namespace {

Validation check_vertex_range(int n, const std::vector<Edge>& edges) {
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      return Validation::fail("edge endpoint out of range");
    if (e.u >= e.v) return Validation::fail("edge not normalized (u < v required)");
  }
  return Validation::pass();
}

}  // namespace

Validation validate_tour(int n, const Tour& t) {
  if (static_cast<int>(t.order.size()) != n)
    return Validation::fail("tour does not visit n vertices");
  std::vector<char> seen(n, 0);
  for (int v : t.order) {
    if (v < 0 || v >= n) return Validation::fail("tour vertex out of range");
    if (seen[v]) return Validation::fail("tour repeats a vertex");
    seen[v] = 1;
  }
  return Validation::pass();
}

Validation validate_spanning_tree(int n, const SpanningTree& t, int max_degree) {
  if (static_cast<int>(t.edges.size()) != n - 1)
    return Validation::fail("spanning tree must have n-1 edges");
  if (auto v = check_vertex_range(n, t.edges); !v) return v;
  std::set<Edge> uniq(t.edges.begin(), t.edges.end());
  if (static_cast<int>(uniq.size()) != n - 1)
    return Validation::fail("spanning tree repeats an edge");
  // Connectivity via union-find; acyclicity follows from edge count.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : t.edges) {
    int a = find(e.u), b = find(e.v);
    if (a == b) return Validation::fail("spanning tree contains a cycle");
    parent[a] = b;
  }
  if (max_degree > 0) {
    auto deg = edge_degrees(n, t.edges);
    for (int v = 0; v < n; ++v)
      if (deg[v] > max_degree)
        return Validation::fail("vertex " + std::to_string(v) + " exceeds degree bound");
  }
  return Validation::pass();
}

Validation validate_matching(int n, const Matching& m) {
  if (auto v = check_vertex_range(n, m.edges); !v) return v;
  if (static_cast<int>(m.edges.size()) != n / 2)
    return Validation::fail("matching must have floor(n/2) edges");
  auto deg = edge_degrees(n, m.edges);
  for (int v = 0; v < n; ++v)
    if (deg[v] > 1) return Validation::fail("matching edges share vertex " + std::to_string(v));
  return Validation::pass();
}

Validation validate_two_factor(int n, const TwoFactor& f, int girth) {
  const int g = std::max(girth, 3);
  std::vector<char> seen(n, 0);
  for (const auto& cyc : f.cycles) {
    if (static_cast<int>(cyc.size()) < g)
      return Validation::fail("cycle shorter than girth " + std::to_string(g));
    for (int v : cyc) {
      if (v < 0 || v >= n) return Validation::fail("cycle vertex out of range");
      if (seen[v]) return Validation::fail("cycles overlap at vertex " + std::to_string(v));
      seen[v] = 1;
    }
  }
  if (f.covered() != n) return Validation::fail("2-factor does not cover every vertex");
  return Validation::pass();
}

Validation validate_two_matching(int n, const TwoMatching& m) {
  if (auto v = check_vertex_range(n, m.edges); !v) return v;
  std::map<Edge, int> mult;
  for (const Edge& e : m.edges) ++mult[e];
  for (const auto& [e, k] : mult)
    if (k > 2) return Validation::fail("edge used more than twice");
  auto deg = edge_degrees(n, m.edges);
  for (int v = 0; v < n; ++v)
    if (deg[v] != 2)
      return Validation::fail("vertex " + std::to_string(v) + " not incident with exactly 2 slots");
  return Validation::pass();
}

Validation validate_h_factor(int n, const HFactor& f) {
  const int h = f.pattern.size;
  if (h < 1) return Validation::fail("empty pattern");
  std::vector<char> seen(n, 0);
  for (const auto& grp : f.groups) {
    if (static_cast<int>(grp.vertices.size()) != h)
      return Validation::fail("group size differs from pattern size");
    for (int v : grp.vertices) {
      if (v < 0 || v >= n) return Validation::fail("group vertex out of range");
      if (seen[v]) return Validation::fail("groups overlap at vertex " + std::to_string(v));
      seen[v] = 1;
    }
    if (grp.edges.size() != f.pattern.edges.size())
      return Validation::fail("group edge count differs from pattern");
    // Isomorphism to the pattern: some assignment of pattern vertices to
    // group vertices maps the pattern edge set onto the group edge set.
    std::vector<int> perm(h);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Edge> got(grp.edges.begin(), grp.edges.end());
    if (static_cast<int>(got.size()) != static_cast<int>(grp.edges.size()))
      return Validation::fail("group repeats an edge");
    bool iso = false;
    do {
      bool all = true;
      for (const Edge& pe : f.pattern.edges) {
        Edge mapped = make_edge(grp.vertices[perm[pe.u]], grp.vertices[perm[pe.v]]);
        if (!got.count(mapped)) {
          all = false;
          break;
        }
      }
      if (all) {
        iso = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!iso) return Validation::fail("group is not an embedded copy of the pattern");
  }
  if (f.covered() < n - h + 1)
    return Validation::fail("H-factor covers fewer than n-|H|+1 points");
  return Validation::pass();
}

Validation validate_constraints(int n, const Constraints& c) {
  if (auto v = check_vertex_range(n, c.include); !v) return v;
  if (auto v = check_vertex_range(n, c.exclude); !v) return v;
  std::set<Edge> inc(c.include.begin(), c.include.end());
  for (const Edge& e : c.exclude)
    if (inc.count(e)) return Validation::fail("edge both included and excluded");
  auto deg = edge_degrees(n, c.include);
  for (int v = 0; v < n; ++v)
    if (deg[v] >= 3)
      return Validation::fail("vertex " + std::to_string(v) + " has 3+ included edges");
  return Validation::pass();
}

Validation validate_fractional(const FractionalSolution& s, double tol) {
  for (const auto& [e, w] : s.weights) {
    if (e.u < 0 || e.v < 0 || e.u >= s.n || e.v >= s.n || e.u >= e.v)
      return Validation::fail("fractional solution references invalid edge");
    if (w < -tol || w > 1 + tol)
      return Validation::fail("edge weight outside [0,1]");
  }
  return Validation::pass();
}

}  // namespace subeuclid
