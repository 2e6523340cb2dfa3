#include "benaloh/nash.hpp"
#include "benaloh/oracle.hpp"
#include "benaloh/simulate.hpp"

#include <benchmark/benchmark.h>

namespace {

benaloh::GameParams make_params(int rounds) {
  benaloh::GameParams params;
  params.voter_success_reward = 2.0;
  params.voter_cheated_penalty = 3.0;
  params.device_success_reward = 1.0;
  params.device_caught_penalty = 4.0;
  params.audit_cost = 1.0;
  params.max_rounds = rounds;
  return params;
}

void BM_NashSolution(benchmark::State& state) {
  const benaloh::GameParams params = make_params(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(benaloh::nash_solution(params));
  }
}
BENCHMARK(BM_NashSolution)->Arg(2)->Arg(8)->Arg(16)->Arg(64);

void BM_GridSweepSval(benchmark::State& state) {
  const benaloh::GameParams params = make_params(2);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(benaloh::grid_sweep_sval(params, grid));
  }
}
BENCHMARK(BM_GridSweepSval)->Arg(1000)->Arg(100000);

void BM_BruteForceDeviceBR(benchmark::State& state) {
  const benaloh::GameParams params = make_params(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benaloh::brute_force_device_br(0.5, params, 1000));
  }
}
BENCHMARK(BM_BruteForceDeviceBR);

void BM_Simulate(benchmark::State& state) {
  const benaloh::GameParams params = make_params(2);
  const benaloh::NashSolution solution = benaloh::nash_solution(params);
  benaloh::SimConfig config;
  config.params = params;
  config.voter = solution.voter_mixed;
  config.device = solution.device;
  config.trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benaloh::simulate(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SimulateBehavioral(benchmark::State& state) {
  const benaloh::GameParams params = make_params(2);
  const benaloh::NashSolution solution = benaloh::nash_solution(params);
  benaloh::SimConfig config;
  config.params = params;
  config.voter = solution.voter_behavioral;
  config.device = solution.device;
  config.trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benaloh::simulate(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBehavioral)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
