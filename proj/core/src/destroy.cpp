#include "balance/destroy.h"

#include <algorithm>

namespace balance {
namespace {

int uniform_index(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Appends agents not yet in `chosen` uniformly at random until it holds
// min(target, m) agents.
void fill_randomly(int num_agents, int target, std::vector<int>& chosen, Rng& rng) {
  target = std::min(target, num_agents);
  if (static_cast<int>(chosen.size()) >= target) return;
  std::vector<char> taken(num_agents, 0);
  for (int a : chosen) taken[a] = 1;
  std::vector<int> pool;
  pool.reserve(num_agents - chosen.size());
  for (int a = 0; a < num_agents; ++a)
    if (!taken[a]) pool.push_back(a);
  int remaining = static_cast<int>(pool.size());
  while (static_cast<int>(chosen.size()) < target) {
    const int pick = uniform_index(rng, remaining);
    chosen.push_back(pool[pick]);
    pool[pick] = pool[--remaining];
  }
}

bool add_agent(std::vector<int>& chosen, std::vector<char>& in_set, int agent) {
  if (agent < 0 || in_set[agent]) return false;
  in_set[agent] = 1;
  chosen.push_back(agent);
  return true;
}

}  // namespace

std::string_view to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::kRandomUniform: return "random";
    case HeuristicKind::kAgentBased: return "agent";
    case HeuristicKind::kMapBased: return "map";
  }
  return "unknown";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name) {
  if (name == "random") return HeuristicKind::kRandomUniform;
  if (name == "agent") return HeuristicKind::kAgentBased;
  if (name == "map") return HeuristicKind::kMapBased;
  return std::nullopt;
}

void TabuList::insert(int agent) {
  if (member_[agent]) return;
  member_[agent] = 1;
  ++count_;
}

void TabuList::clear() {
  std::fill(member_.begin(), member_.end(), 0);
  count_ = 0;
}

Neighborhood random_neighborhood(const Instance& instance, int neighborhood_size, Rng& rng) {
  Neighborhood result{{}, HeuristicKind::kRandomUniform};
  fill_randomly(instance.num_agents(), std::max(1, neighborhood_size), result.agents, rng);
  return result;
}

Neighborhood agent_based_neighborhood(const Instance& instance, const Plan& plan,
                                      const ReservationTable& table, const DistanceCache& distances,
                                      int neighborhood_size, Rng& rng, TabuList& tabu) {
  const int m = instance.num_agents();
  const int target = std::min(std::max(1, neighborhood_size), m);

  std::vector<int> delays(m);
  int max_delay = 0;
  for (int i = 0; i < m; ++i) {
    const Agent& a = instance.agent(i);
    delays[i] = delay(plan.paths[i], distances.get(a.goal)[a.start]);
    max_delay = std::max(max_delay, delays[i]);
  }
  if (max_delay == 0) {
    // No agent can improve, so there is nothing to seed on.
    Neighborhood fallback = random_neighborhood(instance, neighborhood_size, rng);
    fallback.generator = HeuristicKind::kAgentBased;
    return fallback;
  }

  auto best_non_tabu = [&] {
    int best = -1;
    for (int i = 0; i < m; ++i)
      if (!tabu.contains(i)) best = std::max(best, delays[i]);
    return best;
  };
  int seed_delay = best_non_tabu();
  if (seed_delay <= 0) {
    tabu.clear();
    seed_delay = max_delay;
  }
  std::vector<int> tied;
  for (int i = 0; i < m; ++i)
    if (!tabu.contains(i) && delays[i] == seed_delay) tied.push_back(i);
  const int seed = tied[uniform_index(rng, static_cast<int>(tied.size()))];
  tabu.insert(seed);
  if (tabu.size() == m) tabu.clear();

  Neighborhood result{{}, HeuristicKind::kAgentBased};
  std::vector<char> in_set(m, 0);
  add_agent(result.agents, in_set, seed);

  const GridMap& map = instance.map();
  const Path& seed_path = plan.paths[seed];
  const DistanceField& dist = distances.get(instance.agent(seed).goal);
  const int upper_bound = path_length(seed_path);
  std::vector<VertexId> options;

  int start_range = static_cast<int>(seed_path.size());
  for (int walk = 0; walk < kMaxRandomWalks && static_cast<int>(result.agents.size()) < target &&
                     start_range > 0;
       ++walk) {
    const int t0 = uniform_index(rng, start_range);
    VertexId loc = seed_path.steps[t0];
    for (int t = t0; t < upper_bound && static_cast<int>(result.agents.size()) < target; ++t) {
      options.assign(map.neighbors(loc).begin(), map.neighbors(loc).end());
      options.push_back(loc);
      bool moved = false;
      while (!options.empty()) {
        const int pick = uniform_index(rng, static_cast<int>(options.size()));
        const VertexId next = options[pick];
        if (t + 1 + dist[next] < upper_bound) {
          // Agents occupying the step or swapping across it block the seed here.
          const int on_cell = table.occupant(next, t + 1);
          if (on_cell != seed && static_cast<int>(result.agents.size()) < target)
            add_agent(result.agents, in_set, on_cell);
          const int swapper = table.occupant(next, t);
          if (next != loc && swapper >= 0 && swapper != seed && table.occupant(loc, t + 1) == swapper &&
              static_cast<int>(result.agents.size()) < target)
            add_agent(result.agents, in_set, swapper);
          loc = next;
          moved = true;
          break;
        }
        options[pick] = options.back();
        options.pop_back();
      }
      if (!moved) break;
    }
    start_range = t0;
  }

  fill_randomly(m, target, result.agents, rng);
  return result;
}

Neighborhood map_based_neighborhood(const Instance& instance, const Plan& plan,
                                    int neighborhood_size, Rng& rng) {
  const GridMap& map = instance.map();
  const int m = instance.num_agents();
  const int target = std::min(std::max(1, neighborhood_size), m);

  std::vector<VertexId> intersections;
  for (VertexId v = 0; v < map.size(); ++v)
    if (map.passable(v) && map.degree(v) > 2) intersections.push_back(v);
  if (intersections.empty()) {
    Neighborhood fallback = random_neighborhood(instance, neighborhood_size, rng);
    fallback.generator = HeuristicKind::kMapBased;
    return fallback;
  }
  const VertexId center = intersections[uniform_index(rng, static_cast<int>(intersections.size()))];

  // vertex -> distinct visiting agents, CSR layout
  std::vector<int> offsets(map.size() + 1, 0);
  std::vector<int> last_seen(map.size(), -1);
  for (int a = 0; a < m; ++a)
    for (VertexId v : plan.paths[a].steps)
      if (last_seen[v] != a) {
        last_seen[v] = a;
        ++offsets[v + 1];
      }
  for (int v = 0; v < map.size(); ++v) offsets[v + 1] += offsets[v];
  std::vector<int> visitors(offsets.back());
  std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
  std::fill(last_seen.begin(), last_seen.end(), -1);
  for (int a = 0; a < m; ++a)
    for (VertexId v : plan.paths[a].steps)
      if (last_seen[v] != a) {
        last_seen[v] = a;
        visitors[cursor[v]++] = a;
      }

  Neighborhood result{{}, HeuristicKind::kMapBased};
  std::vector<char> in_set(m, 0);
  std::vector<char> collected(map.size(), 0);
  std::vector<VertexId> frontier{center};
  collected[center] = 1;
  int collected_count = 1;
  const int vertex_budget = 2 * target;
  std::vector<int> local;
  std::vector<VertexId> next_cells;
  for (size_t head = 0; head < frontier.size() && static_cast<int>(result.agents.size()) < target; ++head) {
    const VertexId v = frontier[head];
    local.assign(visitors.begin() + offsets[v], visitors.begin() + offsets[v + 1]);
    std::shuffle(local.begin(), local.end(), rng);
    for (int a : local) {
      if (static_cast<int>(result.agents.size()) >= target) break;
      add_agent(result.agents, in_set, a);
    }
    if (collected_count >= vertex_budget) continue;
    next_cells.assign(map.neighbors(v).begin(), map.neighbors(v).end());
    std::shuffle(next_cells.begin(), next_cells.end(), rng);
    for (VertexId n : next_cells) {
      if (collected[n] || collected_count >= vertex_budget) continue;
      collected[n] = 1;
      ++collected_count;
      frontier.push_back(n);
    }
  }

  fill_randomly(m, target, result.agents, rng);
  return result;
}

}  // namespace balance
