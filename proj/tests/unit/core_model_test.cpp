#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "balance/plan.h"
#include "oracles.h"

namespace balance {
namespace {

Path path_of(std::vector<VertexId> steps) { return Path{std::move(steps)}; }

std::set<std::tuple<int, int, int, int, VertexId, VertexId>> as_tuples(const std::vector<Conflict>& conflicts) {
  std::set<std::tuple<int, int, int, int, VertexId, VertexId>> out;
  for (const Conflict& c : conflicts)
    out.insert({c.time, c.kind == ConflictKind::kVertex ? 0 : 1, c.first_agent, c.second_agent, c.from, c.to});
  return out;
}

TEST(PathLength, SingleStepAtGoalIsZero) { EXPECT_EQ(path_length(path_of({5})), 0); }

TEST(PathLength, TwoMoves) { EXPECT_EQ(path_length(path_of({0, 1, 2})), 2); }

TEST(PathLength, WaitsCount) { EXPECT_EQ(path_length(path_of({0, 0, 1})), 2); }

TEST(PathLength, TrailingGoalStepsAreTrimmed) {
  Path p = path_of({0, 1, 1, 1});
  EXPECT_EQ(path_length(p), 1);
  trim(p);
  EXPECT_EQ(p.steps, (std::vector<VertexId>{0, 1}));
  // Leaving the goal and coming back counts up to the final arrival.
  EXPECT_EQ(path_length(path_of({1, 0, 1, 1})), 2);
}

TEST(Delay, Definition) {
  EXPECT_EQ(delay(path_of({0, 1, 2, 3, 4, 5, 6, 7}), 5), 2);
  EXPECT_EQ(delay(path_of({0, 1, 2, 3, 4, 5}), 5), 0);
}

TEST(Delay, ShorterThanShortestIsAnInconsistency) {
  EXPECT_THROW(delay(path_of({0, 1, 2, 3, 4}), 5), CostInconsistency);
}

TEST(SumOfDelays, Examples) {
  Plan zero{{path_of({0, 1}), path_of({4, 3})}};
  const std::vector<int> shortest_zero{1, 1};
  EXPECT_EQ(sum_of_delays(zero, shortest_zero), 0);

  Plan mixed{{path_of({0, 0, 0, 1}), path_of({2, 3}), path_of({0, 0, 0, 0, 1})}};
  const std::vector<int> shortest{1, 1, 1};
  EXPECT_EQ(sum_of_delays(mixed, shortest), 2 + 0 + 3);

  Plan single{{path_of({0, 0, 0, 0, 0, 1})}};
  const std::vector<int> one{1};
  EXPECT_EQ(sum_of_delays(single, one), 4);
}

TEST(SumOfDelays, InvariantUnderAgentReordering) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Plan plan;
    std::vector<int> shortest;
    for (int i = 0; i < 8; ++i) {
      std::vector<VertexId> steps(1 + rng() % 10);
      std::iota(steps.begin(), steps.end(), 0);
      shortest.push_back(static_cast<int>(rng() % steps.size()));
      plan.paths.push_back(path_of(steps));
    }
    const long before = sum_of_delays(plan, shortest);
    std::vector<int> order(8);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Plan shuffled;
    std::vector<int> shuffled_shortest;
    for (int i : order) {
      shuffled.paths.push_back(plan.paths[i]);
      shuffled_shortest.push_back(shortest[i]);
    }
    EXPECT_EQ(sum_of_delays(shuffled, shuffled_shortest), before);
  }
}

TEST(Validate, CrossingTheSameCellAtDifferentTimesIsFeasible) {
  // 3x3 open grid, vertex = 3 * row + col.
  Plan plan{{path_of({3, 4, 5}), path_of({1, 1, 1, 4, 7})}};
  EXPECT_TRUE(validate(plan).empty());
}

TEST(Validate, SwapIsOneEdgeConflict) {
  Plan plan{{path_of({0, 1}), path_of({1, 0})}};
  const auto conflicts = validate(plan);
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_EQ(conflicts[0].kind, ConflictKind::kEdge);
  EXPECT_EQ(conflicts[0].first_agent, 0);
  EXPECT_EQ(conflicts[0].second_agent, 1);
  EXPECT_EQ(conflicts[0].from, 0);
  EXPECT_EQ(conflicts[0].to, 1);
  EXPECT_EQ(conflicts[0].time, 1);
}

TEST(Validate, PassingThroughARestingAgentIsOneVertexConflict) {
  // 1x4 corridor: agent 0 reaches cell 1 at t=2 and rests; agent 1 walks
  // over cell 1 at t=4 (1-based).
  Plan plan{{path_of({2, 1}), path_of({0, 0, 0, 1, 2, 3})}};
  const auto conflicts = validate(plan);
  const auto expected = oracle::brute_force_conflicts(plan);
  ASSERT_EQ(expected.size(), 1u);
  EXPECT_EQ(as_tuples(conflicts), expected);
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_EQ(conflicts[0].kind, ConflictKind::kVertex);
  EXPECT_EQ(conflicts[0].from, 1);
  EXPECT_EQ(conflicts[0].time, 4);
}

// Random walks on a small grid produce dense plans with many conflicts.
Plan random_plan(const GridMap& map, int agents, std::mt19937& rng) {
  std::vector<VertexId> free;
  for (VertexId v = 0; v < map.size(); ++v)
    if (map.passable(v)) free.push_back(v);
  Plan plan;
  for (int i = 0; i < agents; ++i) {
    std::vector<VertexId> steps{free[rng() % free.size()]};
    const int len = static_cast<int>(rng() % 8);
    for (int t = 0; t < len; ++t) {
      auto ns = map.neighbors(steps.back());
      if (ns.empty() || rng() % 4 == 0)
        steps.push_back(steps.back());
      else
        steps.push_back(ns[rng() % ns.size()]);
    }
    plan.paths.push_back(path_of(steps));
  }
  return plan;
}

TEST(Validate, MatchesBruteForceOccupancyTable) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const GridMap map = oracle::random_grid(4, 3, 0.15, rng);
    if (map.passable_count() == 0) continue;
    const Plan plan = random_plan(map, 2 + static_cast<int>(rng() % 4), rng);
    EXPECT_EQ(as_tuples(validate(plan)), oracle::brute_force_conflicts(plan)) << "trial " << trial;
  }
}

TEST(Validate, CanonicalAndSymmetric) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const GridMap map = oracle::random_grid(4, 4, 0.1, rng);
    if (map.passable_count() == 0) continue;
    Plan plan = random_plan(map, 4, rng);
    const auto conflicts = validate(plan);
    for (const Conflict& c : conflicts) {
      EXPECT_LT(c.first_agent, c.second_agent);
      EXPECT_GE(c.time, 1);
    }
    std::reverse(plan.paths.begin(), plan.paths.end());
    EXPECT_EQ(validate(plan).size(), conflicts.size());
  }
}

TEST(WellFormed, RejectsTeleportsAndWrongEndpoints) {
  const GridMap map = oracle::grid_from_rows({"...", ".@.", "..."});
  const Agent agent{0, 0, 2};
  EXPECT_TRUE(is_well_formed(map, agent, path_of({0, 1, 2})));
  EXPECT_TRUE(is_well_formed(map, agent, path_of({0, 0, 1, 2})));
  EXPECT_FALSE(is_well_formed(map, agent, path_of({0, 2})));
  EXPECT_FALSE(is_well_formed(map, agent, path_of({0, 1})));
  EXPECT_FALSE(is_well_formed(map, agent, path_of({0, 3, 4, 5, 2})));  // 4 is blocked
}

TEST(GridMap, FourConnectedAdjacency) {
  const GridMap map = oracle::grid_from_rows({".@.", "...", "..."});
  EXPECT_EQ(map.passable_count(), 8);
  EXPECT_EQ(map.degree(map.to_vertex({1, 1})), 3);
  EXPECT_EQ(map.degree(map.to_vertex({0, 0})), 1);
  EXPECT_TRUE(map.adjacent(map.to_vertex({1, 0}), map.to_vertex({1, 1})));
  EXPECT_FALSE(map.adjacent(map.to_vertex({0, 0}), map.to_vertex({1, 1})));  // diagonal
  EXPECT_FALSE(map.adjacent(map.to_vertex({0, 0}), map.to_vertex({0, 1})));  // blocked
  for (VertexId v = 0; v < map.size(); ++v)
    if (map.passable(v)) {
      EXPECT_GE(map.degree(v), 0);
      EXPECT_LE(map.degree(v), 4);
    }
}

TEST(Instance, RejectsSharedStartsGoalsAndBlockedCells) {
  const GridMap map = oracle::grid_from_rows({"..@."});
  EXPECT_NO_THROW(Instance(map, {{0, 0, 1}, {1, 1, 0}}));
  EXPECT_THROW(Instance(map, {{0, 0, 1}, {1, 0, 3}}), std::invalid_argument);
  EXPECT_THROW(Instance(map, {{0, 0, 1}, {1, 3, 1}}), std::invalid_argument);
  EXPECT_THROW(Instance(map, {{0, 2, 1}}), std::invalid_argument);
}

}  // namespace
}  // namespace balance
