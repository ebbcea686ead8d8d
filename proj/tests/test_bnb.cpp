#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "subeuclid/bnb.hpp"
#include "subeuclid/errors.hpp"
#include "subeuclid/held_karp.hpp"
#include "subeuclid/oracles.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/rng.hpp"
#include "subeuclid/two_factor.hpp"

using namespace subeuclid;

namespace {

// All tours (as canonical edge sets) satisfying the constraints, n <= 9.
std::vector<std::set<Edge>> tours_satisfying(int n, const Constraints& cons) {
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::set<Edge>> out;
  do {
    if (perm.front() > perm.back()) continue;  // orientation dedup
    std::set<Edge> edges;
    int prev = 0;
    for (int v : perm) {
      edges.insert(make_edge(prev, v));
      prev = v;
    }
    edges.insert(make_edge(prev, 0));
    bool ok = true;
    for (const Edge& e : cons.include)
      if (!edges.count(e)) {
        ok = false;
        break;
      }
    if (ok)
      for (const Edge& e : cons.exclude)
        if (edges.count(e)) {
          ok = false;
          break;
        }
    if (ok) out.push_back(std::move(edges));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double min_tour_length(const PointSet& ps, const Constraints& cons) {
  auto tours = tours_satisfying(ps.size(), cons);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& edges : tours) {
    double len = 0;
    for (const Edge& e : edges) len += ps.distance(e.u, e.v);
    best = std::min(best, len);
  }
  return best;
}

}  // namespace

TEST_CASE("bnb equals the oracle for every bound") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto ps = generate_uniform(12, 2, derive_seed(111, s));
    auto [t, tl] = tsp_oracle(ps);
    for (auto bound : {BoundKind::TwoFactorBound, BoundKind::HeldKarpBound}) {
      BnbOptions opt;
      opt.bound = bound;
      auto r = solve_bnb(ps, opt);
      REQUIRE(r.optimal);
      CHECK(r.length == doctest::Approx(tl).epsilon(1e-9));
      CHECK(validate_tour(12, r.tour).ok);
      CHECK(r.stats.leaves <= r.stats.nodes_expanded + 1);
    }
    BnbOptions girth;
    girth.bound = BoundKind::TwoFactorGirthBound;
    girth.girth = 4;
    auto rg = solve_bnb(ps, girth);
    REQUIRE(rg.optimal);
    CHECK(rg.length == doctest::Approx(tl).epsilon(1e-9));
  }
}

TEST_CASE("bnb with the oracle incumbent closes at the root when the bound is tight") {
  // Points on a circle: the 2-factor relaxation is already the tour.
  std::vector<double> coords;
  for (int i = 0; i < 10; ++i) {
    coords.push_back(std::cos(2 * 3.141592653589793 * i / 10));
    coords.push_back(std::sin(2 * 3.141592653589793 * i / 10));
  }
  PointSet circle(2, std::move(coords));
  BnbOptions opt;
  opt.incumbent = IncumbentMode::Oracle;
  auto r = solve_bnb(circle, opt);
  CHECK(r.optimal);
  CHECK(r.stats.nodes_expanded == 1);
  CHECK(r.stats.leaves == 1);
}

TEST_CASE("branching children cover the parent's tour set exactly") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const int n = 8;
    auto ps = generate_uniform(n, 2, derive_seed(222, s));
    Constraints parent;
    if (s % 2) parent.include.push_back(make_edge(0, 1 + static_cast<int>(s % 5)));
    // Branch on the 2-factor's shortest cycle as the solver would.
    TwoFactor factor;
    try {
      factor = two_factor(ps, parent).factor;
    } catch (const InfeasibleError&) {
      continue;
    }
    const std::vector<int>* victim = nullptr;
    for (const auto& cyc : factor.cycles)
      if (static_cast<int>(cyc.size()) < n && (!victim || cyc.size() < victim->size()))
        victim = &cyc;
    if (!victim) continue;
    auto children = two_factor_branch_children(*victim, parent);
    auto parent_tours = tours_satisfying(n, parent);
    std::set<std::set<Edge>> union_of_children;
    std::size_t child_total = 0;
    for (const auto& c : children) {
      auto ts = tours_satisfying(n, c);
      child_total += ts.size();
      for (auto& t : ts) union_of_children.insert(std::move(t));
    }
    // Children partition the parent's tour set (no overlap, full cover).
    CHECK(union_of_children.size() == parent_tours.size());
    CHECK(child_total == parent_tours.size());
    for (const auto& t : parent_tours) CHECK(union_of_children.count(t));
  }
}

TEST_CASE("lp branching children cover the parent's tour set") {
  Constraints parent;
  parent.exclude.push_back(Edge{2, 5});
  auto children = lp_branch_children(Edge{0, 3}, parent);
  REQUIRE(children.size() == 2);
  const int n = 7;
  auto ps = generate_uniform(n, 2, 33);
  auto parent_tours = tours_satisfying(n, parent);
  std::set<std::set<Edge>> got;
  std::size_t total = 0;
  for (const auto& c : children) {
    auto ts = tours_satisfying(n, c);
    total += ts.size();
    for (auto& t : ts) got.insert(std::move(t));
  }
  CHECK(total == parent_tours.size());
  CHECK(got.size() == parent_tours.size());
}

TEST_CASE("bounds never exceed constrained tour lengths") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const int n = 8;
    auto ps = generate_uniform(n, 2, derive_seed(333, s));
    Rng rng(derive_seed(334, s));
    Constraints cons;
    const Edge forced = make_edge(static_cast<int>(rng.below(n)),
                                  static_cast<int>(rng.below(n)));
    if (forced.u != forced.v) cons.include.push_back(forced);
    const Edge banned = make_edge(static_cast<int>(rng.below(n)),
                                  static_cast<int>(rng.below(n)));
    if (banned.u != banned.v && !cons.includes(banned))
      cons.exclude.push_back(banned);
    const double best_tour = min_tour_length(ps, cons);
    try {
      auto tf = two_factor(ps, cons);
      CHECK(tf.length <= best_tour + 1e-9);
    } catch (const InfeasibleError&) {
    }
    try {
      auto hk = hk_value(ps, cons);
      CHECK(hk.value <= best_tour + 1e-6);
    } catch (const InfeasibleError&) {
    }
  }
}

TEST_CASE("a better starting incumbent never expands more nodes") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto ps = generate_uniform(13, 2, derive_seed(444, s));
    BnbOptions weak;  // patch + 2-opt incumbent
    auto r1 = solve_bnb(ps, weak);
    BnbOptions strong;
    strong.incumbent = IncumbentMode::Oracle;  // starts at the optimum
    auto r2 = solve_bnb(ps, strong);
    CHECK(r2.stats.nodes_expanded <= r1.stats.nodes_expanded);
    CHECK(r1.length == doctest::Approx(r2.length).epsilon(1e-9));
  }
}

TEST_CASE("node budget exhaustion is reported") {
  // Find an instance whose tree is nontrivial, then rerun starved.
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto ps = generate_uniform(16, 2, derive_seed(770, s));
    auto full = solve_bnb(ps);
    if (full.stats.nodes_expanded < 4) continue;
    BnbOptions opt;
    opt.node_budget = 2;
    auto r = solve_bnb(ps, opt);
    CHECK_FALSE(r.optimal);
    CHECK(validate_tour(16, r.tour).ok);  // incumbent still a valid tour
    return;
  }
  FAIL("no instance with a nontrivial tree found");
}

TEST_CASE("growth experiment smoke") {
  auto rows = growth_experiment({12}, 1, BoundKind::TwoFactorBound, 5);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 12);
  CHECK(rows[0].nodes >= 1);
  CHECK(rows[0].optimal);
}
