#include <benchmark/benchmark.h>

#include "hsx/evolution.hpp"
#include "hsx/metric.hpp"
#include "hsx/random.hpp"
#include "hsx/scenarios.hpp"

using namespace hsx;

namespace {

std::size_t nodes(const benchmark::State& state) { return static_cast<std::size_t>(state.range(0)); }

void BM_ToLagrangian(benchmark::State& state) {
  const Scenario& s = *find_scenario("breaking");
  const Grid g = scenario_grid(s, nodes(state));
  for (auto _ : state) benchmark::DoNotOptimize(to_lagrangian(s.initial, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToLagrangian)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_Evolve(benchmark::State& state) {
  const LagrangianState x = random_g0_state(1, Grid(-6.0, 6.0, nodes(state)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(x, 1.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evolve)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_EvolveEulerian(benchmark::State& state) {
  const Scenario& s = *find_scenario("breaking");
  const Grid g = scenario_grid(s, nodes(state));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_eulerian(s.initial, 2.5, g));
}
BENCHMARK(BM_EvolveEulerian)->Arg(4096);

void BM_SolveG(benchmark::State& state) {
  const Grid g(-6.0, 6.0, nodes(state));
  const LagrangianState a = random_g0_state(2, g, 0.5);
  const BanachTriple v = random_g0_state(3, g, 0.5).to_triple() - a.to_triple();
  for (auto _ : state) benchmark::DoNotOptimize(solve_g(a, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveG)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_PathLength(benchmark::State& state) {
  const Grid g(-6.0, 6.0, nodes(state));
  const CurvePath path{{random_g0_state(4, g, 0.5), random_g0_state(5, g, 0.5), random_g0_state(6, g, 0.5)}, 3};
  for (auto _ : state) benchmark::DoNotOptimize(path_length(path));
}
BENCHMARK(BM_PathLength)->Arg(1024)->Arg(4096);

void BM_DistanceUpper(benchmark::State& state) {
  const Grid g(-6.0, 6.0, 1024);
  const LagrangianState a = random_g0_state(7, g, 0.5);
  const LagrangianState b = random_g0_state(8, g, 0.5);
  const DistanceBudget budget{static_cast<std::size_t>(state.range(0)), 3, 1};
  for (auto _ : state) benchmark::DoNotOptimize(distance_upper(a, b, budget));
}
BENCHMARK(BM_DistanceUpper)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
