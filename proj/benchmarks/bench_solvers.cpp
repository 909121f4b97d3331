#include <benchmark/benchmark.h>

#include <random>

#include "genreach/fpt.hpp"
#include "genreach/generators.hpp"
#include "genreach/reach.hpp"
#include "genreach/two_sat.hpp"

using namespace genreach;

namespace {

Game random_game(std::size_t n, int k, std::uint64_t seed) {
  RandomParams p;
  p.n = n;
  p.k = k;
  p.out_degree = 4;
  p.min_color_size = std::max<std::size_t>(1, n / 100);
  p.max_color_size = std::max<std::size_t>(1, n / 20);
  p.seed = seed;
  return gen_random(p);
}

void BM_FptByN(benchmark::State& state) {
  auto g = random_game(static_cast<std::size_t>(state.range(0)), 8, 1);
  std::size_t product = 0;
  for (auto _ : state) {
    auto r = solve_fpt(g, {.strategies = false});
    product = r.stats.product_vertices;
    benchmark::DoNotOptimize(r.winner.data());
  }
  state.counters["product"] = static_cast<double>(product);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FptByN)->RangeMultiplier(2)->Range(500, 8000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FptByK(benchmark::State& state) {
  auto g = random_game(1000, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto r = solve_fpt(g, {.strategies = false});
    benchmark::DoNotOptimize(r.winner.data());
  }
}
BENCHMARK(BM_FptByK)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

void BM_FptWithStrategies(benchmark::State& state) {
  auto g = random_game(2000, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    auto r = solve_fpt(g);
    benchmark::DoNotOptimize(r.eve_strategy);
  }
}
BENCHMARK(BM_FptWithStrategies)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Attractor(benchmark::State& state) {
  auto g = random_game(static_cast<std::size_t>(state.range(0)), 1, 4);
  VertexSet target(g.n(), false);
  for (Vertex v : g.objective().color_set(0)) target[v] = true;
  for (auto _ : state) {
    auto a = attractor(g.arena(), target);
    benchmark::DoNotOptimize(a.rank.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Attractor)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_TwoSat(benchmark::State& state) {
  std::mt19937_64 rng(5);
  TwoSatFormula f;
  f.variables = static_cast<std::size_t>(state.range(0));
  for (std::size_t c = 0; c < 2 * f.variables; ++c) {
    f.add({static_cast<std::uint32_t>(rng() % f.variables), (rng() & 1) != 0},
          {static_cast<std::uint32_t>(rng() % f.variables), (rng() & 1) != 0});
  }
  for (auto _ : state) {
    auto r = two_sat_solve(f);
    benchmark::DoNotOptimize(r.satisfiable);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TwoSat)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

}  // namespace

BENCHMARK_MAIN();
