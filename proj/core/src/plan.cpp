#include "balance/plan.h"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace balance {

void trim(Path& path) {
  if (path.steps.empty()) return;
  path.steps.resize(static_cast<size_t>(path_length(path)) + 1);
}

int path_length(const Path& path) {
  if (path.steps.empty()) return 0;
  const VertexId goal = path.steps.back();
  int last = static_cast<int>(path.steps.size()) - 1;
  while (last > 0 && path.steps[last - 1] == goal) --last;
  return last;
}

int delay(const Path& path, int shortest_dist) {
  const int length = path_length(path);
  if (length < shortest_dist)
    throw CostInconsistency("path length " + std::to_string(length) +
                            " is below the shortest distance " + std::to_string(shortest_dist));
  return length - shortest_dist;
}

long sum_of_delays(const Plan& plan, std::span<const int> shortest_dists) {
  if (shortest_dists.size() != plan.paths.size())
    throw std::invalid_argument("one shortest distance per agent required");
  long total = 0;
  for (size_t i = 0; i < plan.paths.size(); ++i) total += delay(plan.paths[i], shortest_dists[i]);
  return total;
}

bool is_well_formed(const GridMap& map, const Agent& agent, const Path& path) {
  if (path.steps.empty() || path.steps.front() != agent.start || path.steps.back() != agent.goal)
    return false;
  for (size_t t = 0; t < path.steps.size(); ++t) {
    if (!map.passable(path.steps[t])) return false;
    if (t > 0 && path.steps[t] != path.steps[t - 1] && !map.adjacent(path.steps[t - 1], path.steps[t]))
      return false;
  }
  return true;
}

std::vector<Conflict> validate(const Plan& plan) {
  std::vector<Conflict> conflicts;
  size_t horizon = 0;
  for (const Path& p : plan.paths) horizon = std::max(horizon, p.steps.size());

  struct Occupancy {
    VertexId vertex;
    int agent;
  };
  struct Move {
    VertexId lo, hi;
    int agent;
    bool forward;  // lo -> hi
  };
  std::vector<Occupancy> occupancy;
  std::vector<Move> moves;

  // Past the longest path every agent rests on its own goal, and rest
  // positions are compared at t = horizon - 1 already.
  for (size_t t = 0; t < horizon; ++t) {
    occupancy.clear();
    for (int i = 0; i < plan.num_agents(); ++i)
      if (!plan.paths[i].empty()) occupancy.push_back({plan.paths[i].at(static_cast<int>(t)), i});
    std::sort(occupancy.begin(), occupancy.end(), [](const Occupancy& a, const Occupancy& b) {
      return std::tie(a.vertex, a.agent) < std::tie(b.vertex, b.agent);
    });
    for (size_t lo = 0; lo < occupancy.size();) {
      size_t hi = lo + 1;
      while (hi < occupancy.size() && occupancy[hi].vertex == occupancy[lo].vertex) ++hi;
      for (size_t a = lo; a < hi; ++a)
        for (size_t b = a + 1; b < hi; ++b)
          conflicts.push_back({ConflictKind::kVertex, occupancy[a].agent, occupancy[b].agent,
                               occupancy[a].vertex, kNoVertex, static_cast<int>(t) + 1});
      lo = hi;
    }

    if (t + 1 >= horizon) continue;
    moves.clear();
    for (int i = 0; i < plan.num_agents(); ++i) {
      if (plan.paths[i].empty()) continue;
      const VertexId u = plan.paths[i].at(static_cast<int>(t));
      const VertexId v = plan.paths[i].at(static_cast<int>(t) + 1);
      if (u == v) continue;
      moves.push_back({std::min(u, v), std::max(u, v), i, u < v});
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      return std::tie(a.lo, a.hi, a.agent) < std::tie(b.lo, b.hi, b.agent);
    });
    for (size_t lo = 0; lo < moves.size();) {
      size_t hi = lo + 1;
      while (hi < moves.size() && moves[hi].lo == moves[lo].lo && moves[hi].hi == moves[lo].hi) ++hi;
      for (size_t a = lo; a < hi; ++a)
        for (size_t b = a + 1; b < hi; ++b) {
          if (moves[a].forward == moves[b].forward) continue;  // same direction is a vertex conflict
          const Move& first = moves[a];
          const VertexId from = first.forward ? first.lo : first.hi;
          const VertexId to = first.forward ? first.hi : first.lo;
          conflicts.push_back({ConflictKind::kEdge, first.agent, moves[b].agent, from, to,
                               static_cast<int>(t) + 1});
        }
      lo = hi;
    }
  }

  std::sort(conflicts.begin(), conflicts.end(), [](const Conflict& a, const Conflict& b) {
    return std::tie(a.time, a.kind, a.first_agent, a.second_agent) <
           std::tie(b.time, b.kind, b.first_agent, b.second_agent);
  });
  return conflicts;
}

std::string describe(const Conflict& c, const GridMap& map) {
  std::ostringstream out;
  auto loc = [&](VertexId v) {
    const Location l = map.to_location(v);
    return "(" + std::to_string(l.row) + "," + std::to_string(l.col) + ")";
  };
  if (c.kind == ConflictKind::kVertex)
    out << "vertex conflict <" << c.first_agent << "," << c.second_agent << "," << loc(c.from)
        << "," << c.time << ">";
  else
    out << "edge conflict <" << c.first_agent << "," << c.second_agent << "," << loc(c.from) << ","
        << loc(c.to) << "," << c.time << ">";
  return out.str();
}

}  // namespace balance
