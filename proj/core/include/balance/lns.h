#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "balance/bandits.h"
#include "balance/destroy.h"
#include "balance/distance.h"
#include "balance/instance.h"
#include "balance/plan.h"
#include "balance/reservation_table.h"
#include "balance/space_time_astar.h"

namespace balance {

/// How (H, N) is chosen each iteration. Uniform random selection is kBiLevel
/// with UniformPolicy.
enum class SchemeKind { kBiLevel, kJoint, kFixed };

struct EngineConfig {
  Policy policy = ThompsonPolicy{};
  SchemeKind scheme = SchemeKind::kBiLevel;
  /// Number of neighborhood size options E; sizes are 2^1 .. 2^E.
  int num_exponents = 5;
  /// Used by SchemeKind::kFixed; its exponent must lie in [1, E].
  ArmChoice fixed{};
  /// Wall-clock budget, initial solution included.
  std::chrono::duration<double> budget{60.0};
  /// Test mode: stop after this many LNS iterations and ignore the clock.
  /// Trace times then read 0 for the initial solution and k ms for iteration k.
  std::optional<int64_t> max_iterations;
  uint64_t seed = 0;
  int pp_restarts = 50;
  /// Run the validator after every iteration and throw on any conflict.
  bool validate_every_iteration = false;
  /// Stop as soon as the sum of delays reaches its lower bound of 0.
  bool stop_at_zero_cost = true;
};

void check_config(const EngineConfig& config);

/// One anytime-trace entry. Iteration 0 is the initial solution and has no
/// heuristic.
struct TraceEntry {
  int64_t iteration = 0;
  double elapsed_ms = 0.0;
  std::optional<HeuristicKind> heuristic;
  int neighborhood_size = 0;
  int64_t reward = 0;
  int64_t cost = 0;
};

struct RunResult {
  Plan final_plan;
  int64_t initial_cost = 0;
  int64_t final_cost = 0;
  double init_ms = 0.0;
  std::vector<TraceEntry> trace;
  /// selection_counts[h][e - 1]
  std::vector<std::vector<int64_t>> selection_counts;

  int64_t iterations() const { return static_cast<int64_t>(trace.size()) - 1; }
};

class InitialSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replanned paths for a neighborhood, aligned with `agents`.
struct PartialPlan {
  std::vector<int> agents;
  std::vector<Path> paths;
};

/// Prioritized planning of `agents` in a fresh random order against `table`,
/// which must hold every fixed path. On success the new paths stay reserved
/// in the table; on failure the table is left as it was.
std::optional<PartialPlan> repair(const Instance& instance, std::span<const int> agents,
                                  ReservationTable& table, const DistanceCache& distances, Rng& rng,
                                  SpaceTimeAStar& search);

/// Same as above against the paths of `fixed_part` for every agent outside
/// `neighborhood` (entries of neighborhood agents are ignored).
std::optional<PartialPlan> repair(const Instance& instance, const Neighborhood& neighborhood,
                                  const Plan& fixed_part, const DistanceCache& distances, Rng& rng);

/// Prioritized planning of every agent with random priority restarts.
std::optional<Plan> initial_solution(const Instance& instance, const DistanceCache& distances,
                                     Rng& rng, int pp_restarts);

/// Per-agent shortest distances start -> goal.
std::vector<int> shortest_distances(const Instance& instance, const DistanceCache& distances);

/// The LNS loop with bandit-selected destroy heuristic and neighborhood
/// size. Throws InitialSolutionError when prioritized planning fails on
/// every restart.
RunResult run(const Instance& instance, const EngineConfig& config);

}  // namespace balance
