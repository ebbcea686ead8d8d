#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "subeuclid/errors.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"

using namespace subeuclid;

namespace {

PointSet square() { return PointSet(2, {0, 0, 1, 0, 1, 1, 0, 1}); }

PointSet unit_triangle() {
  return PointSet(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2});
}

PointSet collinear(int n) {
  std::vector<double> c;
  for (int i = 0; i < n; ++i) {
    c.push_back(i);
    c.push_back(0);
  }
  return PointSet(2, std::move(c));
}

}  // namespace

TEST_CASE("tsp oracle small cases") {
  auto [t1, l1] = tsp_oracle(unit_triangle());
  CHECK(l1 == doctest::Approx(3.0));
  CHECK(validate_tour(3, t1).ok);

  auto [t2, l2] = tsp_oracle(square());
  CHECK(l2 == doctest::Approx(4.0));

  auto [t3, l3] = tsp_oracle(collinear(4));
  CHECK(l3 == doctest::Approx(6.0));

  CHECK_THROWS_AS(tsp_oracle(collinear(2)), std::invalid_argument);
  CHECK_THROWS_AS(tsp_oracle(generate_uniform(19, 2, 1)), std::invalid_argument);
}

TEST_CASE("tsp bitmask dp equals permutation enumeration") {
  for (int n = 4; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      auto ps = generate_uniform(n, 2, derive_seed(99, seed * 31 + n));
      auto [tp, lp] = detail::tsp_permutation(ps);
      auto [tb, lb] = detail::tsp_bitmask(ps);
      CHECK(lp == doctest::Approx(lb).epsilon(1e-12));
      CHECK(validate_tour(n, tb).ok);
    }
}

TEST_CASE("matching oracle") {
  PointSet two(2, {0, 0, 5, 0});
  auto [m1, l1] = matching_oracle(two);
  CHECK(l1 == doctest::Approx(5.0));

  auto [m2, l2] = matching_oracle(square());
  CHECK(l2 == doctest::Approx(2.0));

  auto [m3, l3] = matching_oracle(collinear(4));
  CHECK(l3 == doctest::Approx(2.0));
  CHECK(m3.edges == std::vector<Edge>{Edge{0, 1}, Edge{2, 3}});

  CHECK_THROWS_AS(matching_oracle(collinear(3)), std::invalid_argument);
  CHECK_THROWS_AS(matching_oracle(generate_uniform(14, 2, 1)), std::invalid_argument);
}

TEST_CASE("two factor oracle") {
  auto [f1, l1] = two_factor_oracle(unit_triangle(), 3);
  CHECK(l1 == doctest::Approx(3.0));
  CHECK(validate_two_factor(3, f1, 3).ok);

  auto [f2, l2] = two_factor_oracle(square(), 3);
  CHECK(l2 == doctest::Approx(4.0));
  CHECK(f2.cycles.size() == 1);

  // Two far unit triangles stay separate cycles at girth 3.
  std::vector<double> c = {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2,
                           100, 0, 101, 0, 100.5, std::sqrt(3.0) / 2};
  PointSet far(2, std::move(c));
  auto [f3, l3] = two_factor_oracle(far, 3);
  CHECK(l3 == doctest::Approx(6.0));
  CHECK(f3.cycles.size() == 2);

  CHECK_THROWS_AS(two_factor_oracle(square(), 5), InfeasibleError);
}

TEST_CASE("mst_k oracle") {
  // k = n-1 equals the unconstrained optimum over all trees.
  auto ps = generate_uniform(6, 2, 4);
  auto [t_free, l_free] = mst_k_oracle(ps, 5);
  auto [t_cap, l_cap] = mst_k_oracle(ps, 3);
  CHECK(l_free <= l_cap + 1e-12);

  auto [t_path, l_path] = mst_k_oracle(collinear(4), 2);
  CHECK(l_path == doctest::Approx(3.0));

  // Unit-distance star: center and 3 tips.
  PointSet star(2, {0, 0, 1, 0, -1, 0, 0, 1});
  auto [t_star, l_star] = mst_k_oracle(star, 3);
  CHECK(l_star == doctest::Approx(3.0));

  CHECK_THROWS_AS(mst_k_oracle(generate_uniform(9, 2, 1), 3), std::invalid_argument);
}

TEST_CASE("h factor oracle") {
  // Single-edge pattern equals the matching oracle.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto ps = generate_uniform(8, 2, seed);
    auto [hf, hl] = h_factor_oracle(ps, HPattern::single_edge());
    auto [m, ml] = matching_oracle(ps);
    CHECK(hl == doctest::Approx(ml).epsilon(1e-12));
    CHECK(validate_h_factor(8, hf).ok);
  }

  auto [tf, tl] = h_factor_oracle(unit_triangle(), HPattern::triangle());
  CHECK(tl == doctest::Approx(3.0));

  auto [pf, pl] = h_factor_oracle(collinear(3), HPattern::path(3));
  CHECK(pl == doctest::Approx(2.0));

  CHECK_THROWS_AS(h_factor_oracle(generate_uniform(10, 2, 1), HPattern::triangle()),
                  std::invalid_argument);
}

TEST_CASE("min cut oracle") {
  // Cycle with unit weights: any cut crosses at least two edges.
  FractionalSolution cyc;
  cyc.n = 6;
  for (int i = 0; i < 6; ++i) cyc.set(make_edge(i, (i + 1) % 6), 1.0);
  auto [s1, w1] = min_cut_oracle(cyc);
  CHECK(w1 == doctest::Approx(2.0));

  // Two disjoint triangles: zero cut.
  FractionalSolution two;
  two.n = 6;
  for (int i = 0; i < 3; ++i) two.set(make_edge(i, (i + 1) % 3), 1.0);
  for (int i = 0; i < 3; ++i) two.set(make_edge(3 + i, 3 + (i + 1) % 3), 1.0);
  auto [s2, w2] = min_cut_oracle(two);
  CHECK(w2 == doctest::Approx(0.0));

  CHECK_THROWS_AS(min_cut_oracle(FractionalSolution{11, {}}), std::invalid_argument);
}
