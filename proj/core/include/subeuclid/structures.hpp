#pragma once

#include <map>
#include <string>
#include <vector>

#include "subeuclid/point_set.hpp"

namespace subeuclid {

/// Outcome of a structural invariant check. `ok == false` carries a short
/// human-readable description of the first violation found.
struct Validation {
  bool ok = true;
  std::string message;

  static Validation pass() { return {}; }
  static Validation fail(std::string msg) { return {false, std::move(msg)}; }
  explicit operator bool() const { return ok; }
};

/// Hamiltonian tour given as a visiting order of all n vertices; the closing
/// edge back to order.front() is implicit.
struct Tour {
  std::vector<int> order;

  std::vector<Edge> edges() const;
};

struct SpanningTree {
  std::vector<Edge> edges;
};

struct Matching {
  std::vector<Edge> edges;
};

/// Disjoint vertex cycles covering the point set; each cycle has length >= 3.
struct TwoFactor {
  std::vector<std::vector<int>> cycles;

  std::vector<Edge> edges() const;
  int covered() const;
};

/// Relaxation of a 2-factor in which a doubled edge (a "2-cycle") is
/// allowed; every vertex is incident with exactly two edge slots.
struct TwoMatching {
  std::vector<Edge> edges;  // multiset; a doubled edge appears twice
};

/// Template graph for H-factors: vertices 0..size-1 plus an edge list.
struct HPattern {
  int size = 0;
  std::vector<Edge> edges;

  static HPattern single_edge();
  static HPattern triangle();
  static HPattern path(int vertices);
  static HPattern star(int leaves);
};

/// Vertex-disjoint groups, each carrying an embedded copy of the pattern.
struct HFactor {
  HPattern pattern;
  struct Group {
    std::vector<int> vertices;
    std::vector<Edge> edges;
  };
  std::vector<Group> groups;

  std::vector<Edge> edges() const;
  int covered() const;
};

/// Inclusion set I and exclusion set O of edges carried down a search tree.
struct Constraints {
  std::vector<Edge> include;
  std::vector<Edge> exclude;

  bool includes(Edge e) const;
  bool excludes(Edge e) const;
  Constraints with_include(Edge e) const;
  Constraints with_exclude(Edge e) const;
};

/// Candidate Held-Karp LP point: sparse edge weights in [0,1] on n vertices.
struct FractionalSolution {
  int n = 0;
  std::map<Edge, double> weights;

  double weight(Edge e) const;
  void set(Edge e, double w);
  std::vector<double> vertex_degrees() const;
};

Validation validate_tour(int n, const Tour& t);
Validation validate_spanning_tree(int n, const SpanningTree& t, int max_degree = -1);
Validation validate_matching(int n, const Matching& m);
/// Checks disjoint cycles of length >= girth covering all n vertices.
Validation validate_two_factor(int n, const TwoFactor& f, int girth = 3);
Validation validate_two_matching(int n, const TwoMatching& m);
Validation validate_h_factor(int n, const HFactor& f);
/// I and O must be disjoint and no vertex may carry 3+ included edges.
Validation validate_constraints(int n, const Constraints& c);
Validation validate_fractional(const FractionalSolution& s, double tol = 1e-9);

std::vector<int> edge_degrees(int n, const std::vector<Edge>& edges);

}  // namespace subeuclid
