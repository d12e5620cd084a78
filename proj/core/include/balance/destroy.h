#pragma once

#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "balance/distance.h"
#include "balance/instance.h"
#include "balance/plan.h"
#include "balance/reservation_table.h"

namespace balance {

using Rng = std::mt19937_64;

enum class HeuristicKind { kRandomUniform = 0, kAgentBased = 1, kMapBased = 2 };
inline constexpr int kNumHeuristics = 3;

/// "random", "agent", "map".
std::string_view to_string(HeuristicKind kind);
std::optional<HeuristicKind> parse_heuristic(std::string_view name);

/// Agents whose paths are destroyed and replanned in one iteration.
struct Neighborhood {
  std::vector<int> agents;
  HeuristicKind generator = HeuristicKind::kRandomUniform;
};

/// Agents recently used as agent-based seeds.
class TabuList {
 public:
  explicit TabuList(int num_agents) : member_(num_agents, 0) {}
  bool contains(int agent) const { return member_[agent] != 0; }
  void insert(int agent);
  void clear();
  int size() const { return count_; }

 private:
  std::vector<char> member_;
  int count_ = 0;
};

/// min(N, m) distinct agents drawn uniformly without replacement.
Neighborhood random_neighborhood(const Instance& instance, int neighborhood_size, Rng& rng);

/// Seeds on the most delayed non-tabu agent and adds the agents met by timed
/// random walks that could still shorten the seed's path. `table` must hold
/// exactly the paths of `plan`.
Neighborhood agent_based_neighborhood(const Instance& instance, const Plan& plan,
                                      const ReservationTable& table, const DistanceCache& distances,
                                      int neighborhood_size, Rng& rng, TabuList& tabu);

/// Picks a random vertex of degree > 2 and collects agents whose paths visit
/// it or cells expanded around it.
Neighborhood map_based_neighborhood(const Instance& instance, const Plan& plan,
                                    int neighborhood_size, Rng& rng);

/// Maximum random walks per agent-based neighborhood.
inline constexpr int kMaxRandomWalks = 10;

}  // namespace balance
