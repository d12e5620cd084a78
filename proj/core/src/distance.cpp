#include "balance/distance.h"

#include <stdexcept>

namespace balance {

DistanceField bfs_distances(const GridMap& map, VertexId goal) {
  if (!map.passable(goal)) throw std::invalid_argument("BFS goal must be a passable cell");
  std::vector<int> dist(map.size(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(map.passable_count());
  dist[goal] = 0;
  queue.push_back(goal);
  for (size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (VertexId v : map.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return DistanceField(goal, std::move(dist));
}

const DistanceField& DistanceCache::get(VertexId goal) const {
  std::lock_guard lock(mutex_);
  auto& slot = fields_[goal];
  if (!slot) slot = std::make_unique<DistanceField>(bfs_distances(*map_, goal));
  return *slot;
}

}  // namespace balance
