#include <benchmark/benchmark.h>

#include <string>

#include "balance/benchmark_io.h"
#include "balance/lns.h"

namespace {

const balance::Instance& random_map_instance(int m) {
  static const balance::GridMap map =
      balance::parse_map(balance::read_file(std::string(BALANCE_DATA_DIR) + "/random-32-32-10.map"));
  static const auto entries =
      balance::parse_scen(balance::read_file(std::string(BALANCE_DATA_DIR) + "/scen/random-32-32-10-random-1.scen"));
  static std::vector<std::unique_ptr<balance::Instance>> cache(entries.size() + 1);
  if (!cache[m]) cache[m] = std::make_unique<balance::Instance>(balance::build_instance(map, entries, m));
  return *cache[m];
}

void BM_UnconstrainedAStar(benchmark::State& state) {
  const auto& instance = random_map_instance(1);
  balance::DistanceCache distances(instance.map());
  balance::ReservationTable table(instance.map().size());
  balance::SpaceTimeAStar search;
  const auto& agent = instance.agent(0);
  const auto& dist = distances.get(agent.goal);
  for (auto _ : state) {
    auto path = search.plan(instance.map(), agent, table, dist, balance::planning_horizon(instance.map(), table));
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_UnconstrainedAStar);

void BM_InitialSolution(benchmark::State& state) {
  const auto& instance = random_map_instance(static_cast<int>(state.range(0)));
  balance::DistanceCache distances(instance.map());
  balance::Rng rng(0);
  for (auto _ : state) {
    auto plan = balance::initial_solution(instance, distances, rng, 50);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_InitialSolution)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state) {
  const auto& instance = random_map_instance(static_cast<int>(state.range(0)));
  balance::DistanceCache distances(instance.map());
  balance::Rng rng(0);
  const auto plan = balance::initial_solution(instance, distances, rng, 50);
  if (!plan) {
    state.SkipWithError("initial solution failed");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(balance::validate(*plan));
}
BENCHMARK(BM_Validate)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_LnsIterations(benchmark::State& state) {
  const auto& instance = random_map_instance(200);
  balance::EngineConfig config;
  config.max_iterations = state.range(0);
  config.stop_at_zero_cost = false;
  for (auto _ : state) {
    auto result = balance::run(instance, config);
    benchmark::DoNotOptimize(result.final_cost);
  }
}
BENCHMARK(BM_LnsIterations)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
