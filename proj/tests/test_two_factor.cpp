#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "subeuclid/errors.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"
#include "subeuclid/two_factor.hpp"

using namespace subeuclid;

namespace {

PointSet square() { return PointSet(2, {0, 0, 1, 0, 1, 1, 0, 1}); }

PointSet two_far_triangles() {
  return PointSet(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2,
                      100, 0, 101, 0, 100.5, std::sqrt(3.0) / 2});
}

}  // namespace

TEST_CASE("two_factor matches the oracle on random instances") {
  for (int n : {5, 6, 7, 8, 9, 10})
    for (std::uint64_t s = 0; s < 15; ++s) {
      auto ps = generate_uniform(n, 2, derive_seed(7000 + n, s));
      auto r = two_factor(ps);
      CHECK(validate_two_factor(n, r.factor).ok);
      auto [of, ol] = two_factor_oracle(ps, 3);
      CHECK(r.length == doctest::Approx(ol).epsilon(1e-9));
    }
}

TEST_CASE("two_factor simple cases") {
  PointSet tri(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2});
  auto r = two_factor(tri);
  CHECK(r.length == doctest::Approx(3.0));

  auto sq = two_factor(square());
  CHECK(sq.length == doctest::Approx(4.0));
}

TEST_CASE("two_factor with an excluded square side uses both diagonals") {
  // With one side banned, the only 4-cycle pairs each endpoint of the
  // banned side with the two opposite corners: two sides plus the two
  // diagonals, total 2 + 2*sqrt(2).
  Constraints cons;
  cons.exclude.push_back(Edge{0, 1});
  auto r = two_factor(square(), cons);
  CHECK(r.length == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));
  CHECK(r.factor.cycles.size() == 1);
  bool has_banned = false;
  for (const Edge& e : r.factor.edges())
    if (e == Edge{0, 1}) has_banned = true;
  CHECK_FALSE(has_banned);
}

TEST_CASE("two_factor honors forced edges") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto ps = generate_uniform(8, 2, derive_seed(31, s));
    // Force the longest edge of the instance into the 2-factor.
    Edge longest{0, 1};
    double lw = -1;
    for (int u = 0; u < 8; ++u)
      for (int v = u + 1; v < 8; ++v)
        if (ps.distance(u, v) > lw) {
          lw = ps.distance(u, v);
          longest = Edge{u, v};
        }
    Constraints cons;
    cons.include.push_back(longest);
    auto r = two_factor(ps, cons);
    bool found = false;
    for (const Edge& e : r.factor.edges())
      if (e == longest) found = true;
    CHECK(found);
    CHECK(r.length >= two_factor(ps).length - 1e-9);
  }
}

TEST_CASE("two_factor infeasibility reports a vertex") {
  auto ps = generate_uniform(6, 2, 4);
  Constraints cons;
  cons.include = {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}};
  CHECK_THROWS_AS(two_factor(ps, cons), InfeasibleError);
  try {
    two_factor(ps, cons);
  } catch (const InfeasibleError& e) {
    CHECK(e.vertex() == 0);
  }

  // Excluding every edge at vertex 0 is infeasible too.
  Constraints block;
  for (int v = 1; v < 6; ++v) block.exclude.push_back(Edge{0, v});
  CHECK_THROWS_AS(two_factor(ps, block), InfeasibleError);
}

TEST_CASE("two_factor pricing agrees with the complete-graph solve") {
  // n large enough that the candidate graph is sparse; the priced solution
  // must match a solve forced onto the complete edge set.
  for (std::uint64_t s = 0; s < 4; ++s) {
    const int n = 18;
    auto ps = generate_uniform(n, 2, derive_seed(888, s));
    auto sparse = two_factor(ps);
    // Complete-graph reference via the girth solver at g = 3 on a tiny
    // budget (no branching happens, bound equals the relaxation).
    auto reference = two_factor_girth(ps, 3);
    CHECK(sparse.length == doctest::Approx(reference.length).epsilon(1e-9));
    CHECK(validate_two_factor(n, sparse.factor).ok);
  }
}

TEST_CASE("two_factor_girth basics") {
  // g = 3 is the plain 2-factor.
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto ps = generate_uniform(9, 2, derive_seed(12, s));
    auto a = two_factor(ps);
    auto b = two_factor_girth(ps, 3);
    CHECK(b.optimal);
    CHECK(a.length == doctest::Approx(b.length).epsilon(1e-12));
  }
}

TEST_CASE("two_factor_girth at g = n equals the optimal tour") {
  for (int n : {6, 8, 10, 12})
    for (std::uint64_t s = 0; s < 6; ++s) {
      auto ps = generate_uniform(n, 2, derive_seed(900 + n, s));
      auto r = two_factor_girth(ps, n);
      REQUIRE(r.optimal);
      auto [t, tl] = tsp_oracle(ps);
      CHECK(r.length == doctest::Approx(tl).epsilon(1e-9));
      CHECK(validate_two_factor(n, r.factor, n).ok);
    }
}

TEST_CASE("two_factor_girth merges far triangles at girth 4") {
  auto ps = two_far_triangles();
  auto r = two_factor_girth(ps, 4);
  REQUIRE(r.optimal);
  CHECK(r.factor.cycles.size() == 1);
  auto [of, ol] = two_factor_oracle(ps, 4);
  CHECK(r.length == doctest::Approx(ol).epsilon(1e-9));
}

TEST_CASE("two_factor_girth equals the oracle across girths") {
  for (int n : {7, 8, 9})
    for (int g = 3; g <= n; ++g)
      for (std::uint64_t s = 0; s < 5; ++s) {
        auto ps = generate_uniform(n, 2, derive_seed(1300 + 17 * n + g, s));
        auto r = two_factor_girth(ps, g);
        REQUIRE(r.optimal);
        auto [of, ol] = two_factor_oracle(ps, g);
        CHECK(r.length == doctest::Approx(ol).epsilon(1e-9));
        CHECK(validate_two_factor(n, r.factor, g).ok);
      }
}

TEST_CASE("girth chain is monotone per instance") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto ps = generate_uniform(10, 2, derive_seed(64, s));
    double prev = 0;
    for (int g = 3; g <= 10; ++g) {
      auto r = two_factor_girth(ps, g);
      REQUIRE(r.optimal);
      CHECK(r.length >= prev - 1e-9);
      prev = r.length;
    }
  }
}
