#pragma once

#include <limits>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "balance/grid.h"

namespace balance {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Exact unweighted distance from every cell to one goal; kUnreachable for
/// blocked or disconnected cells.
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(VertexId goal, std::vector<int> dist) : goal_(goal), dist_(std::move(dist)) {}

  VertexId goal() const { return goal_; }
  int operator[](VertexId v) const { return dist_[v]; }
  const std::vector<int>& values() const { return dist_; }

 private:
  VertexId goal_ = kNoVertex;
  std::vector<int> dist_;
};

DistanceField bfs_distances(const GridMap& map, VertexId goal);

/// Lazily computed fields keyed by goal. References stay valid for the
/// cache's lifetime; lookups are safe from several threads.
class DistanceCache {
 public:
  explicit DistanceCache(const GridMap& map) : map_(&map) {}

  const DistanceField& get(VertexId goal) const;

 private:
  const GridMap* map_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<VertexId, std::unique_ptr<DistanceField>> fields_;
};

}  // namespace balance
