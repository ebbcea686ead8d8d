#include <benchmark/benchmark.h>

#include "subeuclid/held_karp.hpp"
#include "subeuclid/matching.hpp"
#include "subeuclid/mst.hpp"
#include "subeuclid/point_set.hpp"
#include "subeuclid/two_factor.hpp"

using namespace subeuclid;

static void BM_Mst(benchmark::State& state) {
  auto ps = generate_uniform(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mst(ps).second);
}
BENCHMARK(BM_Mst)->Arg(200)->Arg(1000)->Arg(2000);

static void BM_MinMatching(benchmark::State& state) {
  auto ps = generate_uniform(static_cast<int>(state.range(0)), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(min_matching(ps).second);
}
BENCHMARK(BM_MinMatching)->Unit(benchmark::kMillisecond)->Arg(100)->Arg(300)->Arg(1000);

static void BM_TwoFactor(benchmark::State& state) {
  auto ps = generate_uniform(static_cast<int>(state.range(0)), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(two_factor(ps).length);
}
BENCHMARK(BM_TwoFactor)->Unit(benchmark::kMillisecond)->Arg(12)->Arg(28)->Arg(64);

static void BM_HeldKarp(benchmark::State& state) {
  auto ps = generate_uniform(static_cast<int>(state.range(0)), 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(hk_value(ps).value);
}
BENCHMARK(BM_HeldKarp)->Unit(benchmark::kMillisecond)->Arg(12)->Arg(24)->Arg(48);

BENCHMARK_MAIN();
