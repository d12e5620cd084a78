#include <benchmark/benchmark.h>

#include "balance/bandits.h"

namespace {

balance::BiLevelBandit warmed(const balance::Policy& policy) {
  balance::BiLevelBandit bandit(policy, 5);
  balance::Rng rng(7);
  std::uniform_int_distribution<int> reward(0, 20);
  for (int i = 0; i < 1000; ++i) {
    const auto choice = bandit.select(rng);
    bandit.update(choice, reward(rng));
  }
  return bandit;
}

void BM_BiLevelThompson(benchmark::State& state) {
  auto bandit = warmed(balance::ThompsonPolicy{});
  balance::Rng rng(1);
  for (auto _ : state) {
    const auto choice = bandit.select(rng);
    bandit.update(choice, 1.0);
  }
}
BENCHMARK(BM_BiLevelThompson);

void BM_BiLevelUcb1(benchmark::State& state) {
  auto bandit = warmed(balance::Ucb1Policy{});
  balance::Rng rng(1);
  for (auto _ : state) {
    const auto choice = bandit.select(rng);
    bandit.update(choice, 1.0);
  }
}
BENCHMARK(BM_BiLevelUcb1);

void BM_BiLevelRoulette(benchmark::State& state) {
  auto bandit = warmed(balance::RoulettePolicy{});
  balance::Rng rng(1);
  for (auto _ : state) {
    const auto choice = bandit.select(rng);
    bandit.update(choice, 1.0);
  }
}
BENCHMARK(BM_BiLevelRoulette);

}  // namespace
