#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "balance/destroy.h"
#include "balance/lns.h"
#include "oracles.h"

namespace balance {
namespace {

const std::string kDataDir = BALANCE_DATA_DIR;

std::vector<Agent> stationary_and_moving(const std::vector<std::pair<VertexId, VertexId>>& endpoints) {
  std::vector<Agent> agents;
  for (size_t i = 0; i < endpoints.size(); ++i)
    agents.push_back({static_cast<int>(i), endpoints[i].first, endpoints[i].second});
  return agents;
}

void expect_valid(const Neighborhood& n, int m, int size) {
  EXPECT_EQ(static_cast<int>(n.agents.size()), std::min(size, m));
  std::set<int> distinct(n.agents.begin(), n.agents.end());
  EXPECT_EQ(distinct.size(), n.agents.size());
  for (int a : n.agents) {
    EXPECT_GE(a, 0);
    EXPECT_LT(a, m);
  }
}

TEST(Heuristic, NamesRoundTrip) {
  for (int h = 0; h < kNumHeuristics; ++h) {
    const auto kind = static_cast<HeuristicKind>(h);
    EXPECT_EQ(parse_heuristic(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_heuristic("bogus").has_value());
}

TEST(RandomNeighborhood, Saturation) {
  const GridMap map = oracle::grid_from_rows({"....", "...."});
  const Instance inst(map, stationary_and_moving({{0, 4}, {1, 5}, {2, 6}}));
  Rng rng(1);
  auto n = random_neighborhood(inst, 8, rng);
  std::sort(n.agents.begin(), n.agents.end());
  EXPECT_EQ(n.agents, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(random_neighborhood(inst, 1, rng).agents.size(), 1u);
}

TEST(RandomNeighborhood, InclusionProbabilityIsHalf) {
  const GridMap map = oracle::grid_from_rows({"....", "...."});
  const Instance inst(map, stationary_and_moving({{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
  Rng rng(77);
  std::vector<int> hits(4, 0);
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    const auto n = random_neighborhood(inst, 2, rng);
    expect_valid(n, 4, 2);
    for (int a : n.agents) ++hits[a];
  }
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(hits[a] / double(kDraws), 0.5, 0.02);
}

// 5x5 open grid. Agent 0 runs along row 2 and waits once because agent 1
// crosses column 2 first; agents 2-4 rest in corners.
struct CrossingFixture {
  GridMap map = oracle::grid_from_rows({".....", ".....", ".....", ".....", "....."});
  VertexId at(int r, int c) const { return map.to_vertex({r, c}); }
  Instance instance() const {
    return Instance(map, stationary_and_moving({{at(2, 0), at(2, 4)},
                                                {at(0, 2), at(4, 2)},
                                                {at(4, 0), at(4, 0)},
                                                {at(4, 4), at(4, 4)},
                                                {at(0, 4), at(0, 4)}}));
  }
  Plan plan() const {
    return Plan{{Path{{at(2, 0), at(2, 1), at(2, 1), at(2, 2), at(2, 3), at(2, 4)}},
                 Path{{at(0, 2), at(1, 2), at(2, 2), at(3, 2), at(4, 2)}},
                 Path{{at(4, 0)}},
                 Path{{at(4, 4)}},
                 Path{{at(0, 4)}}}};
  }
};

// Every (cell, t) a walk could visit from any start time on the seed path,
// under the rule "move only if t + 1 + h(next) < seed length".
std::set<std::pair<VertexId, int>> reachable_walk_cells(const GridMap& map, const Path& seed,
                                                        const DistanceField& h) {
  const int bound = path_length(seed);
  std::set<std::pair<VertexId, int>> out;
  std::vector<std::pair<VertexId, int>> stack;
  for (int t = 0; t < static_cast<int>(seed.size()); ++t) stack.push_back({seed.steps[t], t});
  while (!stack.empty()) {
    const auto [v, t] = stack.back();
    stack.pop_back();
    if (t >= bound) continue;
    std::vector<VertexId> options(map.neighbors(v).begin(), map.neighbors(v).end());
    options.push_back(v);
    for (VertexId n : options)
      if (t + 1 + h[n] < bound && out.insert({n, t + 1}).second) stack.push_back({n, t + 1});
  }
  return out;
}

TEST(AgentBasedNeighborhood, FindsTheCrossingAgent) {
  const CrossingFixture fx;
  const Instance inst = fx.instance();
  const Plan plan = fx.plan();
  ASSERT_TRUE(validate(plan).empty());
  ReservationTable table(fx.map.size());
  for (int i = 0; i < 5; ++i) table.add(i, plan.paths[i]);
  DistanceCache distances(fx.map);

  // Brute force: agent 1 shares a timed cell with some admissible walk.
  const auto cells = reachable_walk_cells(fx.map, plan.paths[0], distances.get(inst.agent(0).goal));
  bool blocker_met = false;
  for (int t = 0; t < static_cast<int>(plan.paths[1].size()); ++t)
    blocker_met |= cells.count({plan.paths[1].steps[t], t}) > 0;
  ASSERT_TRUE(blocker_met);

  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    TabuList tabu(5);
    auto n = agent_based_neighborhood(inst, plan, table, distances, 2, rng, tabu);
    std::sort(n.agents.begin(), n.agents.end());
    EXPECT_EQ(n.agents, (std::vector<int>{0, 1})) << "seed " << seed;
    EXPECT_EQ(n.generator, HeuristicKind::kAgentBased);
  }
}

TEST(AgentBasedNeighborhood, SizeOneIsTheSeed) {
  const CrossingFixture fx;
  const Instance inst = fx.instance();
  const Plan plan = fx.plan();
  ReservationTable table(fx.map.size());
  for (int i = 0; i < 5; ++i) table.add(i, plan.paths[i]);
  DistanceCache distances(fx.map);
  Rng rng(5);
  TabuList tabu(5);
  EXPECT_EQ(agent_based_neighborhood(inst, plan, table, distances, 1, rng, tabu).agents, std::vector<int>{0});
  EXPECT_TRUE(tabu.contains(0));
}

TEST(AgentBasedNeighborhood, ZeroDelayBehavesLikeRandom) {
  const GridMap map = oracle::grid_from_rows({"....", "....", "...."});
  const Instance inst(map, stationary_and_moving({{0, 1}, {4, 5}, {8, 9}, {3, 3}, {11, 7}}));
  const Plan plan{{Path{{0, 1}}, Path{{4, 5}}, Path{{8, 9}}, Path{{3}}, Path{{11, 7}}}};
  ASSERT_TRUE(validate(plan).empty());
  ReservationTable table(map.size());
  for (int i = 0; i < 5; ++i) table.add(i, plan.paths[i]);
  DistanceCache distances(map);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng a(seed), b(seed);
    TabuList tabu(5);
    EXPECT_EQ(agent_based_neighborhood(inst, plan, table, distances, 3, a, tabu).agents,
              random_neighborhood(inst, 3, b).agents);
  }
}

struct BenchmarkFixture {
  GridMap map = parse_map(read_file(kDataDir + "/random-32-32-10.map"));
  Instance instance = build_instance(
      map, parse_scen(read_file(kDataDir + "/scen/random-32-32-10-random-1.scen")), 100);
  DistanceCache distances{instance.map()};
  Plan plan;
  ReservationTable table{map.size()};

  BenchmarkFixture() {
    Rng rng(3);
    plan = *initial_solution(instance, distances, rng, 50);
    for (int i = 0; i < instance.num_agents(); ++i) table.add(i, plan.paths[i]);
  }
};

TEST(AgentBasedNeighborhood, SeedHasMaximumNonTabuDelay) {
  const BenchmarkFixture fx;
  const int m = fx.instance.num_agents();
  const auto shortest = shortest_distances(fx.instance, fx.distances);
  std::vector<int> delays(m);
  for (int i = 0; i < m; ++i) delays[i] = delay(fx.plan.paths[i], shortest[i]);
  ASSERT_GT(*std::max_element(delays.begin(), delays.end()), 0);

  Rng rng(10);
  TabuList tabu(m);
  for (int call = 0; call < 300; ++call) {
    int expected = 0;
    for (int i = 0; i < m; ++i)
      if (!tabu.contains(i)) expected = std::max(expected, delays[i]);
    if (expected == 0) expected = *std::max_element(delays.begin(), delays.end());
    const int size = 1 << (1 + call % 5);
    const auto n = agent_based_neighborhood(fx.instance, fx.plan, fx.table, fx.distances, size, rng, tabu);
    expect_valid(n, m, size);
    EXPECT_TRUE(std::any_of(n.agents.begin(), n.agents.end(), [&](int a) { return delays[a] == expected; }));
  }
}

TEST(MapBasedNeighborhood, CrossCenterVisitorComesFirst) {
  const GridMap map = oracle::grid_from_rows({"@.@", "...", "@.@"});
  const Instance inst(map, stationary_and_moving({{1, 7}, {3, 3}, {5, 5}}));
  const Plan plan{{Path{{1, 4, 7}}, Path{{3}}, Path{{5}}}};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto n = map_based_neighborhood(inst, plan, 1, rng);
    EXPECT_EQ(n.agents, std::vector<int>{0});
    EXPECT_EQ(n.generator, HeuristicKind::kMapBased);
  }
}

TEST(MapBasedNeighborhood, UntouchedIntersectionIsFilledRandomly) {
  const GridMap map = oracle::grid_from_rows({"@.@@@@@", ".......", "@.@@@@@"});
  const auto v = [&](int c) { return map.to_vertex({1, c}); };
  const Instance inst(map, stationary_and_moving({{v(4), v(4)}, {v(5), v(5)}, {v(6), v(6)}}));
  const Plan plan{{Path{{v(4)}}, Path{{v(5)}}, Path{{v(6)}}}};
  std::vector<int> hits(3, 0);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto n = map_based_neighborhood(inst, plan, 1, rng);
    expect_valid(n, 3, 1);
    ++hits[n.agents[0]];
  }
  for (int h : hits) EXPECT_GT(h, 50);
}

TEST(MapBasedNeighborhood, CorridorFallsBackToRandom) {
  const GridMap map = oracle::grid_from_rows({"......"});
  const Instance inst(map, stationary_and_moving({{0, 1}, {2, 3}, {4, 5}}));
  const Plan plan{{Path{{0, 1}}, Path{{2, 3}}, Path{{4, 5}}}};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    EXPECT_EQ(map_based_neighborhood(inst, plan, 2, a).agents, random_neighborhood(inst, 2, b).agents);
  }
}

TEST(Neighborhoods, DeterministicAndWellFormedOnBenchmark) {
  const BenchmarkFixture fx;
  const int m = fx.instance.num_agents();
  for (int size : {1, 2, 8, 32, 200}) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      Rng a(seed), b(seed);
      TabuList ta(m), tb(m);
      const auto n1 = agent_based_neighborhood(fx.instance, fx.plan, fx.table, fx.distances, size, a, ta);
      const auto n2 = agent_based_neighborhood(fx.instance, fx.plan, fx.table, fx.distances, size, b, tb);
      EXPECT_EQ(n1.agents, n2.agents);
      expect_valid(n1, m, size);
      const auto m1 = map_based_neighborhood(fx.instance, fx.plan, size, a);
      const auto m2 = map_based_neighborhood(fx.instance, fx.plan, size, b);
      EXPECT_EQ(m1.agents, m2.agents);
      expect_valid(m1, m, size);
      const auto r1 = random_neighborhood(fx.instance, size, a);
      expect_valid(r1, m, size);
    }
  }
}

TEST(TabuList, ClearsWhenEveryAgentIsTabu) {
  const CrossingFixture fx;
  const Instance inst = fx.instance();
  const Plan plan = fx.plan();
  ReservationTable table(fx.map.size());
  for (int i = 0; i < 5; ++i) table.add(i, plan.paths[i]);
  DistanceCache distances(fx.map);
  Rng rng(0);
  TabuList tabu(5);
  // Only agent 0 is delayed; after it becomes tabu the list is reset and it
  // is chosen again.
  for (int i = 0; i < 5; ++i)
    EXPECT_EQ(agent_based_neighborhood(inst, plan, table, distances, 1, rng, tabu).agents, std::vector<int>{0});
}

}  // namespace
}  // namespace balance
