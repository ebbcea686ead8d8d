#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>

#include "subeuclid/local_moves.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"
#include "subeuclid/two_factor.hpp"

using namespace subeuclid;

namespace {

using Pt = std::array<double, 2>;

double dist(const Pt& a, const Pt& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST_CASE("shortcut_saving on collinear points is zero") {
  Pt p{0, 0}, q{1, 0}, r{2, 0}, s{3, 0};
  CHECK(shortcut_saving(p, q, r, s) == doctest::Approx(0.0));
}

TEST_CASE("shortcut_saving on a bent configuration beats the cube-root bound") {
  // Legs of length Delta = 100 meeting at a right angle across a short
  // middle segment of length delta = 0.01.
  const double delta_len = 100.0, eps_len = 0.01;
  Pt q{0, 0}, r{eps_len / std::sqrt(2.0), eps_len / std::sqrt(2.0)};
  Pt p{delta_len, 0};
  Pt s{r[0], r[1] + delta_len};
  const double saving = shortcut_saving(p, q, r, s);
  CHECK(saving >= std::cbrt(delta_len) / 4.0 - 2 * eps_len);
}

TEST_CASE("shortcut_saving is nonnegative on random quadruples") {
  Rng rng(17);
  for (int i = 0; i < 100000; ++i) {
    Pt p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Pt q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Pt r{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Pt s{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    if (shortcut_saving(p, q, r, s) < -1e-12) {
      CHECK(false);
      break;
    }
  }
}

TEST_CASE("shortcut_saving is invariant under rigid motions") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    Pt pts[4];
    for (auto& pt : pts) pt = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double base = shortcut_saving(pts[0], pts[1], pts[2], pts[3]);
    const double theta = rng.uniform(0, 6.283185307179586);
    const double tx = rng.uniform(-10, 10), ty = rng.uniform(-10, 10);
    Pt moved[4];
    for (int j = 0; j < 4; ++j)
      moved[j] = {std::cos(theta) * pts[j][0] - std::sin(theta) * pts[j][1] + tx,
                  std::sin(theta) * pts[j][0] + std::cos(theta) * pts[j][1] + ty};
    const double rotated = shortcut_saving(moved[0], moved[1], moved[2], moved[3]);
    CHECK(rotated == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("repair_four on the axis cross") {
  Pt center{0, 0};
  Pt p1{10, 0}, s1{0, 10}, p2{-10, 0}, s2{0, -10};
  auto res = repair_four(p1, s1, p2, s2, center, 0.0);
  // Sum of center distances is 40, Delta = 10; the bound allows 35.
  CHECK(res.total_length <= 40.0 - 5.0 + 1e-9);
}

TEST_CASE("repair_four with nearly antipodal pairs") {
  Pt center{0, 0};
  Pt p1{10, 0.01}, s1{-10, 0}, p2{-0.01, 10}, s2{0, -10};
  auto res = repair_four(p1, s1, p2, s2, center, 0.0);
  const double radial = dist(p1, center) + dist(s1, center) +
                        dist(p2, center) + dist(s2, center);
  CHECK(res.total_length <= radial - 10.0 / 2 + 1e-9);
}

TEST_CASE("repair_four bound holds on random hypothesis configurations") {
  Rng rng(31);
  for (int i = 0; i < 10000; ++i) {
    Pt center{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double delta = rng.uniform(0.0, 0.05);
    Pt pts[4];
    double radial = 0, min_r = 1e18;
    for (auto& pt : pts) {
      const double r = rng.uniform(1.0, 30.0);
      const double a = rng.uniform(0, 6.283185307179586);
      pt = {center[0] + r * std::cos(a), center[1] + r * std::sin(a)};
      radial += r;
      min_r = std::min(min_r, r);
    }
    auto res = repair_four(pts[0], pts[1], pts[2], pts[3], center, delta);
    CHECK(res.total_length <= radial + 4 * delta - min_r / 2 + 1e-9);
  }
}

TEST_CASE("repair_four rejects degenerate input") {
  Pt center{0, 0}, at_center{0, 0}, ok{1, 0};
  CHECK_THROWS_AS(repair_four(at_center, ok, ok, ok, center, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(repair_four(ok, ok, ok, ok, center, -1.0), std::invalid_argument);
}

TEST_CASE("merge_cycles on two close triangles") {
  PointSet ps(2, {0, 0, 1, 0, 0.5, 0.8,           // triangle A
                  1.1, 0, 2.1, 0, 1.6, 0.8});     // triangle B, 0.1 away
  TwoFactor f{{{0, 1, 2}, {3, 4, 5}}};
  const double before = structure_length(ps, f.edges());
  auto merged = merge_cycles(ps, f, 1, 3);
  CHECK(merged.cycles.size() == 1);
  CHECK(validate_two_factor(6, merged).ok);
  const double after = structure_length(ps, merged.edges());
  CHECK(after - before <= 2 * ps.distance(1, 3) + 1e-12);

  CHECK_THROWS_AS(merge_cycles(ps, f, 0, 1), std::invalid_argument);
}

TEST_CASE("merge_cycles increase bound on random instances") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto ps = generate_uniform(12, 2, derive_seed(808, s));
    auto r = two_factor(ps);
    if (r.factor.cycles.size() < 2) continue;
    Rng rng(derive_seed(809, s));
    for (int trial = 0; trial < 50; ++trial) {
      const int ci = static_cast<int>(rng.below(r.factor.cycles.size()));
      int cj = static_cast<int>(rng.below(r.factor.cycles.size()));
      if (ci == cj) continue;
      const auto& a = r.factor.cycles[ci];
      const auto& b = r.factor.cycles[cj];
      const int x = a[rng.below(a.size())];
      const int y = b[rng.below(b.size())];
      const double before = structure_length(ps, r.factor.edges());
      auto merged = merge_cycles(ps, r.factor, x, y);
      CHECK(merged.cycles.size() == r.factor.cycles.size() - 1);
      const double after = structure_length(ps, merged.edges());
      CHECK(after - before <= 2 * ps.distance(x, y) + 1e-12);
      CHECK(validate_two_factor(12, merged).ok);
    }
  }
}

TEST_CASE("patch_to_tour") {
  // Single cycle: unchanged.
  PointSet sq(2, {0, 0, 1, 0, 1, 1, 0, 1});
  TwoFactor single{{{0, 1, 2, 3}}};
  auto res = patch_to_tour(sq, single);
  CHECK(res.tour.order == std::vector<int>{0, 1, 2, 3});
  CHECK(res.merge_costs.empty());

  // Two far triangles: one 6-cycle crossing the gap twice.
  PointSet far(2, {0, 0, 1, 0, 0.5, 0.8, 50, 0, 51, 0, 50.5, 0.8});
  TwoFactor two{{{0, 1, 2}, {3, 4, 5}}};
  auto patched = patch_to_tour(far, two);
  CHECK(validate_tour(6, patched.tour).ok);
  CHECK(patched.merge_costs.size() == 1);

  // The patched tour upper-bounds the optimal tour and is never below the
  // minimum 2-factor it came from.
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto ps = generate_uniform(11, 2, derive_seed(66, s));
    auto r = two_factor(ps);
    auto pt = patch_to_tour(ps, r.factor);
    CHECK(validate_tour(11, pt.tour).ok);
    const double len = structure_length(ps, pt.tour.edges());
    auto [t, tl] = tsp_oracle(ps);
    CHECK(tl <= len + 1e-9);
    CHECK(len >= r.length - 1e-9);
    double cost_sum = 0;
    for (double c : pt.merge_costs) cost_sum += c;
    CHECK(len == doctest::Approx(r.length + cost_sum).epsilon(1e-9));
  }
}

TEST_CASE("find_isolated_clusters") {
  // Planted 3-cluster far from a grid.
  std::vector<double> coords;
  auto push = [&](double x, double y) {
    coords.push_back(x);
    coords.push_back(y);
  };
  push(20.0, 20.0);
  push(20.001, 20.0);
  push(20.0, 20.001);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) push(i, j);
  PointSet ps(2, std::move(coords));
  auto clusters = find_isolated_clusters(ps, 3, 0.01, 1.0);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0] == std::vector<int>{0, 1, 2});

  // Unit-spaced grid has no isolated pairs at D = 0.5.
  std::vector<double> grid;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      grid.push_back(i);
      grid.push_back(j);
    }
  PointSet gps(2, std::move(grid));
  CHECK(find_isolated_clusters(gps, 2, 0.1, 0.5).empty());

  CHECK_THROWS_AS(find_isolated_clusters(gps, 2, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("isolated cluster counts grow roughly linearly") {
  // Uniform points in [0,t]^2 with t = sqrt(n): constant density, so the
  // expected count of isolated pairs is proportional to n.
  auto count_at = [](int n, std::uint64_t seed) {
    auto ps = scale(generate_uniform(n, 2, seed), std::sqrt(static_cast<double>(n)));
    return static_cast<int>(find_isolated_clusters(ps, 2, 0.2, 0.7).size());
  };
  long c1 = 0, c2 = 0, c4 = 0;
  for (std::uint64_t s = 0; s < 8; ++s) {
    c1 += count_at(1000, derive_seed(41, s));
    c2 += count_at(2000, derive_seed(42, s));
    c4 += count_at(4000, derive_seed(43, s));
  }
  CHECK(c1 > 0);
  CHECK(c2 > c1);
  CHECK(c4 > c2);
  // Doubling n should roughly double the count.
  CHECK(c2 >= static_cast<long>(1.4 * c1));
  CHECK(c4 >= static_cast<long>(1.4 * c2));
  CHECK(c4 <= static_cast<long>(3.0 * c2));
}
