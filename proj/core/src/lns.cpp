#include "balance/lns.h"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

namespace balance {
namespace {

using Clock = std::chrono::steady_clock;

std::unique_ptr<ArmScheme> make_scheme(const EngineConfig& config) {
  switch (config.scheme) {
    case SchemeKind::kBiLevel: return std::make_unique<BiLevelBandit>(config.policy, config.num_exponents);
    case SchemeKind::kJoint: return std::make_unique<JointBandit>(config.policy, config.num_exponents);
    case SchemeKind::kFixed: return std::make_unique<FixedChoice>(config.fixed);
  }
  throw std::invalid_argument("unknown scheme");
}

Neighborhood destroy(HeuristicKind kind, const Instance& instance, const Plan& plan,
                     const ReservationTable& table, const DistanceCache& distances, int size,
                     Rng& rng, TabuList& tabu) {
  switch (kind) {
    case HeuristicKind::kRandomUniform: return random_neighborhood(instance, size, rng);
    case HeuristicKind::kAgentBased:
      return agent_based_neighborhood(instance, plan, table, distances, size, rng, tabu);
    case HeuristicKind::kMapBased: return map_based_neighborhood(instance, plan, size, rng);
  }
  throw std::invalid_argument("unknown destroy heuristic");
}

}  // namespace

void check_config(const EngineConfig& config) {
  check_policy(config.policy);
  if (config.num_exponents < 1) throw std::invalid_argument("E must be at least 1");
  if (config.num_exponents > 30) throw std::invalid_argument("E must be at most 30");
  if (!config.max_iterations && !(config.budget.count() >= 0.0))
    throw std::invalid_argument("budget must be non-negative");
  if (config.max_iterations && *config.max_iterations < 0)
    throw std::invalid_argument("iteration budget must be non-negative");
  if (config.pp_restarts < 1) throw std::invalid_argument("pp_restarts must be at least 1");
  if (config.scheme == SchemeKind::kFixed &&
      (config.fixed.exponent < 1 || config.fixed.exponent > config.num_exponents))
    throw std::invalid_argument("fixed neighborhood size must be 2^e with 1 <= e <= E");
}

std::vector<int> shortest_distances(const Instance& instance, const DistanceCache& distances) {
  std::vector<int> out;
  out.reserve(instance.num_agents());
  for (const Agent& a : instance.agents()) out.push_back(distances.get(a.goal)[a.start]);
  return out;
}

std::optional<PartialPlan> repair(const Instance& instance, std::span<const int> agents,
                                  ReservationTable& table, const DistanceCache& distances, Rng& rng,
                                  SpaceTimeAStar& search) {
  PartialPlan result;
  result.agents.assign(agents.begin(), agents.end());
  std::shuffle(result.agents.begin(), result.agents.end(), rng);
  result.paths.reserve(result.agents.size());
  for (int id : result.agents) {
    const Agent& agent = instance.agent(id);
    auto path = search.plan(instance.map(), agent, table, distances.get(agent.goal),
                            planning_horizon(instance.map(), table));
    if (!path) {
      for (size_t k = 0; k < result.paths.size(); ++k) table.remove(result.agents[k], result.paths[k]);
      return std::nullopt;
    }
    table.add(id, *path);
    result.paths.push_back(std::move(*path));
  }
  return result;
}

std::optional<PartialPlan> repair(const Instance& instance, const Neighborhood& neighborhood,
                                  const Plan& fixed_part, const DistanceCache& distances, Rng& rng) {
  std::vector<char> destroyed(instance.num_agents(), 0);
  for (int a : neighborhood.agents) destroyed[a] = 1;
  ReservationTable table(instance.map().size());
  for (int a = 0; a < fixed_part.num_agents(); ++a)
    if (!destroyed[a]) table.add(a, fixed_part.paths[a]);
  SpaceTimeAStar search;
  return repair(instance, neighborhood.agents, table, distances, rng, search);
}

std::optional<Plan> initial_solution(const Instance& instance, const DistanceCache& distances,
                                     Rng& rng, int pp_restarts) {
  std::vector<int> everyone(instance.num_agents());
  std::iota(everyone.begin(), everyone.end(), 0);
  SpaceTimeAStar search;
  for (int attempt = 0; attempt < pp_restarts; ++attempt) {
    ReservationTable table(instance.map().size());
    auto partial = repair(instance, everyone, table, distances, rng, search);
    if (!partial) continue;
    Plan plan;
    plan.paths.resize(instance.num_agents());
    for (size_t k = 0; k < partial->agents.size(); ++k)
      plan.paths[partial->agents[k]] = std::move(partial->paths[k]);
    return plan;
  }
  return std::nullopt;
}

RunResult run(const Instance& instance, const EngineConfig& config) {
  check_config(config);
  const auto start = Clock::now();
  // Iteration budgets run on a logical clock so that traces are reproducible.
  int64_t logical_ms = 0;
  auto elapsed_ms = [&] {
    if (config.max_iterations) return static_cast<double>(logical_ms);
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  Rng rng(config.seed);
  const GridMap& map = instance.map();
  const int m = instance.num_agents();
  DistanceCache distances(map);
  const std::vector<int> shortest = shortest_distances(instance, distances);
  for (int i = 0; i < m; ++i)
    if (shortest[i] == kUnreachable)
      throw InitialSolutionError("agent " + std::to_string(i) + " cannot reach its goal");

  auto initial = initial_solution(instance, distances, rng, config.pp_restarts);
  if (!initial)
    throw InitialSolutionError("prioritized planning failed after " + std::to_string(config.pp_restarts) +
                               " restarts");

  RunResult result;
  result.final_plan = std::move(*initial);
  Plan& plan = result.final_plan;
  std::vector<int> delays(m);
  int64_t cost = 0;
  for (int i = 0; i < m; ++i) {
    delays[i] = delay(plan.paths[i], shortest[i]);
    cost += delays[i];
  }
  result.initial_cost = cost;
  result.init_ms = elapsed_ms();
  result.trace.push_back({0, result.init_ms, std::nullopt, 0, 0, cost});
  result.selection_counts.assign(kNumHeuristics, std::vector<int64_t>(config.num_exponents, 0));

  ReservationTable table(map.size());
  for (int i = 0; i < m; ++i) table.add(i, plan.paths[i]);

  auto scheme = make_scheme(config);
  TabuList tabu(m);
  SpaceTimeAStar search;
  const double budget_ms = config.budget.count() * 1000.0;

  for (int64_t iteration = 1;; ++iteration) {
    logical_ms = iteration;
    if (config.max_iterations) {
      if (iteration > *config.max_iterations) break;
    } else if (elapsed_ms() >= budget_ms) {
      break;
    }
    if (config.stop_at_zero_cost && cost == 0) break;

    const ArmChoice choice = scheme->select(rng);
    const Neighborhood neighborhood = destroy(choice.heuristic, instance, plan, table, distances,
                                              choice.neighborhood_size(), rng, tabu);

    int64_t old_delay = 0;
    for (int a : neighborhood.agents) {
      old_delay += delays[a];
      table.remove(a, plan.paths[a]);
    }

    int64_t reward = 0;
    auto replanned = repair(instance, neighborhood.agents, table, distances, rng, search);
    if (replanned) {
      int64_t new_delay = 0;
      for (size_t k = 0; k < replanned->agents.size(); ++k)
        new_delay += delay(replanned->paths[k], shortest[replanned->agents[k]]);
      if (new_delay < old_delay) {
        reward = old_delay - new_delay;
        for (size_t k = 0; k < replanned->agents.size(); ++k) {
          const int a = replanned->agents[k];
          delays[a] = delay(replanned->paths[k], shortest[a]);
          plan.paths[a] = std::move(replanned->paths[k]);
        }
      } else {
        for (size_t k = 0; k < replanned->agents.size(); ++k)
          table.remove(replanned->agents[k], replanned->paths[k]);
      }
    }
    if (reward == 0)
      for (int a : neighborhood.agents) table.add(a, plan.paths[a]);

    cost -= reward;
    scheme->update(choice, static_cast<double>(reward));
    ++result.selection_counts[static_cast<int>(choice.heuristic)][choice.exponent - 1];
    result.trace.push_back({iteration, elapsed_ms(), choice.heuristic, choice.neighborhood_size(), reward, cost});

    if (config.validate_every_iteration) {
      const auto conflicts = validate(plan);
      if (!conflicts.empty())
        throw std::logic_error("iteration " + std::to_string(iteration) + " produced " +
                               describe(conflicts.front(), map));
    }
  }

  result.final_cost = cost;
  return result;
}

}  // namespace balance
