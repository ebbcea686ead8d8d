#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "subeuclid/json_io.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"
#include "subeuclid/structures.hpp"

using namespace subeuclid;

namespace {

PointSet unit_triangle() {
  return PointSet(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2});
}

}  // namespace

TEST_CASE("generate_uniform basics") {
  auto empty = generate_uniform(0, 2, 7);
  CHECK(empty.size() == 0);
  CHECK(empty.dim() == 2);

  auto ps = generate_uniform(1000, 2, 42);
  CHECK(ps.size() == 1000);
  for (int i = 0; i < ps.size(); ++i)
    for (int k = 0; k < 2; ++k) {
      CHECK(ps.coord(i, k) >= 0.0);
      CHECK(ps.coord(i, k) < 1.0);
    }

  auto a = generate_uniform(50, 3, 9);
  auto b = generate_uniform(50, 3, 9);
  CHECK(a.coords() == b.coords());

  auto c = generate_uniform(50, 3, 10);
  CHECK(a.coords() != c.coords());
}

TEST_CASE("points are pairwise distinct") {
  auto ps = generate_uniform(500, 1, 3);
  std::set<double> seen;
  for (int i = 0; i < ps.size(); ++i) CHECK(seen.insert(ps.coord(i, 0)).second);
}

TEST_CASE("edge_length basics") {
  PointSet ps(2, {0, 0, 3, 4});
  CHECK(edge_length(ps, make_edge(0, 1)) == doctest::Approx(5.0));
  CHECK(edge_length(ps, make_edge(1, 0)) == doctest::Approx(5.0));
  CHECK_THROWS_AS(edge_length(ps, Edge{0, 5}), std::out_of_range);

  PointSet coincident(2, {1, 1, 1, 1});
  CHECK(edge_length(coincident, make_edge(0, 1)) == 0.0);
}

TEST_CASE("structure_length counts multiplicity") {
  PointSet ps(2, {0, 0, 2, 0});
  std::vector<Edge> empty;
  CHECK(structure_length(ps, empty) == 0.0);
  std::vector<Edge> doubled{make_edge(0, 1), make_edge(0, 1)};
  CHECK(structure_length(ps, doubled) == doctest::Approx(4.0));

  auto tri = unit_triangle();
  Tour t{{0, 1, 2}};
  CHECK(structure_length(tri, t.edges()) == doctest::Approx(3.0));
}

TEST_CASE("scale") {
  auto tri = unit_triangle();
  auto same = scale(tri, 1.0);
  CHECK(same.coords() == tri.coords());

  auto doubled = scale(tri, 2.0);
  Tour t{{0, 1, 2}};
  CHECK(structure_length(doubled, t.edges()) == doctest::Approx(6.0));

  // Scaling law across random edge sets.
  auto ps = generate_uniform(40, 2, 11);
  Rng rng(5);
  for (double a : {0.3, 2.0, 17.5, 1e-3}) {
    auto scaled = scale(ps, a);
    std::vector<Edge> edges;
    for (int i = 0; i < 60; ++i) {
      int u = static_cast<int>(rng.below(40)), v = static_cast<int>(rng.below(40));
      if (u != v) edges.push_back(make_edge(u, v));
    }
    const double base = structure_length(ps, edges);
    const double got = structure_length(scaled, edges);
    CHECK(got == doctest::Approx(a * base).epsilon(1e-12));
  }
}

TEST_CASE("structure validators") {
  CHECK(validate_tour(4, Tour{{0, 1, 2, 3}}).ok);
  CHECK_FALSE(validate_tour(4, Tour{{0, 1, 2, 2}}).ok);
  CHECK_FALSE(validate_tour(4, Tour{{0, 1, 2}}).ok);

  SpanningTree st{{Edge{0, 1}, Edge{1, 2}, Edge{2, 3}}};
  CHECK(validate_spanning_tree(4, st).ok);
  CHECK(validate_spanning_tree(4, st, 2).ok);
  SpanningTree star{{Edge{0, 1}, Edge{0, 2}, Edge{0, 3}}};
  CHECK_FALSE(validate_spanning_tree(4, star, 2).ok);
  SpanningTree cyc{{Edge{0, 1}, Edge{1, 2}, Edge{0, 2}}};
  CHECK_FALSE(validate_spanning_tree(4, cyc).ok);

  CHECK(validate_matching(4, Matching{{Edge{0, 1}, Edge{2, 3}}}).ok);
  CHECK_FALSE(validate_matching(4, Matching{{Edge{0, 1}, Edge{1, 2}}}).ok);
  CHECK(validate_matching(5, Matching{{Edge{0, 1}, Edge{2, 3}}}).ok);

  TwoFactor tf{{{0, 1, 2}, {3, 4, 5}}};
  CHECK(validate_two_factor(6, tf).ok);
  CHECK_FALSE(validate_two_factor(6, tf, 4).ok);
  CHECK_FALSE(validate_two_factor(7, tf).ok);

  TwoMatching tm{{Edge{0, 1}, Edge{0, 1}, Edge{2, 3}, Edge{2, 3}}};
  CHECK(validate_two_matching(4, tm).ok);

  Constraints good{{Edge{0, 1}}, {Edge{1, 2}}};
  CHECK(validate_constraints(4, good).ok);
  Constraints overlap{{Edge{0, 1}}, {Edge{0, 1}}};
  CHECK_FALSE(validate_constraints(4, overlap).ok);
  Constraints heavy{{Edge{0, 1}, Edge{0, 2}, Edge{0, 3}}, {}};
  CHECK_FALSE(validate_constraints(4, heavy).ok);
}

TEST_CASE("h-factor validator checks embeddings") {
  HFactor f;
  f.pattern = HPattern::triangle();
  f.groups.push_back({{0, 1, 2}, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}}});
  CHECK(validate_h_factor(3, f).ok);
  HFactor bad = f;
  bad.groups[0].edges = {Edge{0, 1}, Edge{0, 2}, Edge{0, 2}};
  CHECK_FALSE(validate_h_factor(3, bad).ok);
}

TEST_CASE("point set json round trip") {
  auto ps = generate_uniform(17, 3, 12345);
  auto text = point_set_to_json(ps);
  auto back = point_set_from_json(text);
  CHECK(back.dim() == ps.dim());
  CHECK(back.size() == ps.size());
  CHECK(back.coords() == ps.coords());  // 17 significant digits round-trip
  REQUIRE(back.seed().has_value());
  CHECK(*back.seed() == 12345);

  PointSet unseeded(2, {0.5, 0.25});
  auto t2 = point_set_to_json(unseeded);
  CHECK(t2.find("seed") == std::string::npos);
  auto back2 = point_set_from_json(t2);
  CHECK_FALSE(back2.seed().has_value());
}

TEST_CASE("fractional json round trip") {
  FractionalSolution sol;
  sol.n = 5;
  sol.set(make_edge(0, 1), 0.5);
  sol.set(make_edge(1, 4), 1.0 / 3.0);
  auto back = fractional_from_json(fractional_to_json(sol));
  CHECK(back.n == 5);
  CHECK(back.weight(make_edge(0, 1)) == 0.5);
  CHECK(back.weight(make_edge(1, 4)) == 1.0 / 3.0);
}

TEST_CASE("derived seeds are order independent") {
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 1) == derive_seed(7, 1));
  CHECK(derive_seed(8, 1) != derive_seed(7, 1));
}
