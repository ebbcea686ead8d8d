#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "subeuclid/mst.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"

using namespace subeuclid;

TEST_CASE("mst basics") {
  PointSet two(2, {0, 0, 3, 4});
  auto [t2, l2] = mst(two);
  CHECK(l2 == doctest::Approx(5.0));

  PointSet tri(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2});
  auto [t3, l3] = mst(tri);
  CHECK(l3 == doctest::Approx(2.0));

  for (std::uint64_t s = 0; s < 30; ++s) {
    auto ps = generate_uniform(8, 2, derive_seed(10, s));
    auto [tree, len] = mst(ps);
    CHECK(validate_spanning_tree(8, tree).ok);
    auto [otree, olen] = mst_k_oracle(ps, 7);  // vacuous cap = plain MST
    CHECK(len == doctest::Approx(olen).epsilon(1e-9));
  }
}

TEST_CASE("degree histogram") {
  SpanningTree path{{Edge{0, 1}, Edge{1, 2}, Edge{2, 3}, Edge{3, 4}}};
  auto h = mst_degree_histogram(path);
  CHECK(h[1] == 2);
  CHECK(h[2] == 3);

  SpanningTree star{{Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{0, 4}}};
  auto hs = mst_degree_histogram(star);
  CHECK(hs[1] == 4);
  CHECK(hs[4] == 1);

  // Degree identity: sum k * count_k = 2 (n - 1).
  auto ps = generate_uniform(100, 2, 3);
  auto [tree, len] = mst(ps);
  auto hist = mst_degree_histogram(tree);
  int total = 0;
  for (auto [k, c] : hist) total += k * c;
  CHECK(total == 2 * (100 - 1));
}

TEST_CASE("planted two-prong configuration forces mst degree 2") {
  // Central point with two far neighbors at distance ~1 in opposite
  // directions, each shielded by a tight simplex cluster beyond it, all
  // isolated from a distant background: the center picks up exactly its
  // two neighbors in the MST.
  std::vector<double> c;
  auto push = [&](double x, double y) {
    c.push_back(x);
    c.push_back(y);
  };
  push(0, 0);     // center (index 0)
  push(1, 0);     // right neighbor
  push(-1, 0);    // left neighbor
  const double r = 0.0577;  // small simplex around +-1.5
  for (double sx : {1.5, -1.5}) {
    push(sx - r / 2, -0.05);
    push(sx - r / 2, 0.05);
    push(sx + r, 0);
  }
  // Far background grid.
  for (int i = 0; i < 5; ++i) push(40 + 3 * i, 40);
  PointSet ps(2, std::move(c));
  auto [tree, len] = mst(ps);
  auto deg = edge_degrees(ps.size(), tree.edges);
  CHECK(deg[0] == 2);
}

TEST_CASE("mst_k exact modes agree with the oracle") {
  for (int k : {2, 3, 4})
    for (std::uint64_t s = 0; s < 25; ++s) {
      auto ps = generate_uniform(8, 2, derive_seed(500 + k, s));
      auto r = mst_k(ps, k);
      CHECK(r.exact);
      CHECK(validate_spanning_tree(8, r.tree, k).ok);
      auto [otree, olen] = mst_k_oracle(ps, k);
      CHECK(r.length == doctest::Approx(olen).epsilon(1e-9));
    }
}

TEST_CASE("mst_k on the unit square with k = 2 is the three-side path") {
  PointSet square(2, {0, 0, 1, 0, 1, 1, 0, 1});
  auto r = mst_k(square, 2);
  CHECK(r.exact);
  CHECK(r.length == doctest::Approx(3.0));
}

TEST_CASE("mst_k nesting on exact instances") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto ps = generate_uniform(12, 2, derive_seed(42, s));
    auto [tree, base] = mst(ps);
    double prev = base;
    for (int k : {5, 4, 3, 2}) {
      auto r = mst_k(ps, k);
      CHECK(r.exact);
      CHECK(r.length >= prev - 1e-9);
      CHECK(r.length >= base - 1e-9);
      prev = r.length;
    }
  }
}

TEST_CASE("mst_k heuristic stays feasible") {
  auto ps = generate_uniform(60, 2, 9);
  for (int k : {2, 3}) {
    auto r = mst_k(ps, k);
    CHECK_FALSE(r.exact);
    CHECK(validate_spanning_tree(60, r.tree, k).ok);
    CHECK(r.length >= mst(ps).second - 1e-9);
  }
}
