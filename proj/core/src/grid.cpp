#include "balance/grid.h"

#include <stdexcept>
#include <string>

namespace balance {

GridMap::GridMap(int width, int height, std::vector<uint8_t> passable)
    : width_(width), height_(height), passable_(std::move(passable)) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("grid dimensions must be positive");
  if (passable_.size() != static_cast<size_t>(width) * height)
    throw std::invalid_argument("grid cell count " + std::to_string(passable_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));

  offsets_.assign(size() + 1, 0);
  adjacency_.reserve(static_cast<size_t>(size()) * 4);
  for (VertexId v = 0; v < size(); ++v) {
    offsets_[v] = static_cast<int32_t>(adjacency_.size());
    if (!passable_[v]) continue;
    ++passable_count_;
    const int r = v / width_;
    const int c = v % width_;
    const Location candidates[4] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (const Location& n : candidates)
      if (this->passable(n)) adjacency_.push_back(to_vertex(n));
  }
  offsets_[size()] = static_cast<int32_t>(adjacency_.size());
}

bool GridMap::adjacent(VertexId u, VertexId v) const {
  if (!passable(u) || !passable(v)) return false;
  for (VertexId n : neighbors(u))
    if (n == v) return true;
  return false;
}

}  // namespace balance
