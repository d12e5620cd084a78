#include "balance/space_time_astar.h"

#include <algorithm>
#include <queue>

namespace balance {
namespace {

struct OpenEntry {
  int f;
  int g;
  int node;
};

// Lowest f first; among equal f the deeper node; then insertion order.
struct OpenOrder {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.node > b.node;
  }
};

}  // namespace

int planning_horizon(const GridMap& map, const ReservationTable& table) {
  return table.longest_path() + map.width() + map.height() + kHorizonSlack;
}

std::optional<Path> SpaceTimeAStar::plan(const GridMap& map, const Agent& agent,
                                         const ReservationTable& table, const DistanceField& dist,
                                         int t_max) {
  expanded_ = 0;
  const VertexId goal = agent.goal;
  if (dist.goal() != goal) throw std::invalid_argument("distance field is for a different goal");
  if (dist[agent.start] == kUnreachable || dist[agent.start] > t_max) return std::nullopt;
  if (table.parked_from(goal) != kNever) return std::nullopt;
  // Resting on the goal is only safe after every reserved visit to it.
  const int earliest_rest = table.last_visit(goal) + 1;

  const size_t cells = static_cast<size_t>(map.size());
  const size_t needed = cells * (static_cast<size_t>(t_max) + 1);
  if (seen_.size() < needed) seen_.resize(needed, 0);
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  nodes_.clear();

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  nodes_.push_back({agent.start, 0, -1});
  seen_[agent.start] = stamp_;
  open.push({dist[agent.start], 0, 0});

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const Node cur = nodes_[top.node];
    ++expanded_;

    if (cur.vertex == goal && cur.time >= earliest_rest) {
      Path path;
      path.steps.resize(static_cast<size_t>(cur.time) + 1);
      for (int n = top.node; n >= 0; n = nodes_[n].parent) path.steps[nodes_[n].time] = nodes_[n].vertex;
      return path;
    }

    const int next_t = cur.time + 1;
    if (next_t > t_max) continue;
    auto try_push = [&](VertexId next) {
      const int h = dist[next];
      if (h == kUnreachable || next_t + h > t_max) return;
      const size_t key = static_cast<size_t>(next_t) * cells + static_cast<size_t>(next);
      if (seen_[key] == stamp_) return;
      if (!table.vertex_free(next, next_t)) return;
      if (next != cur.vertex && !table.edge_free(cur.vertex, next, cur.time)) return;
      seen_[key] = stamp_;
      nodes_.push_back({next, next_t, top.node});
      open.push({next_t + h, next_t, static_cast<int>(nodes_.size()) - 1});
    };
    for (VertexId next : map.neighbors(cur.vertex)) try_push(next);
    try_push(cur.vertex);
  }
  return std::nullopt;
}

std::optional<Path> plan_path(const GridMap& map, const Agent& agent, const ReservationTable& table,
                              const DistanceField& dist, int t_max) {
  SpaceTimeAStar search;
  return search.plan(map, agent, table, dist, t_max);
}

}  // namespace balance
