#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace balance {

/// Dense index of a map cell: row * width + col.
using VertexId = int32_t;

inline constexpr VertexId kNoVertex = -1;

struct Location {
  int row = 0;
  int col = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

/// 4-connected passability grid. Cells are addressed either by Location or by
/// the row-major VertexId; both views are kept cheap to convert.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, std::vector<uint8_t> passable);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }

  bool contains(Location loc) const {
    return loc.row >= 0 && loc.row < height_ && loc.col >= 0 && loc.col < width_;
  }
  bool passable(VertexId v) const { return v >= 0 && v < size() && passable_[v] != 0; }
  bool passable(Location loc) const { return contains(loc) && passable_[to_vertex(loc)] != 0; }

  VertexId to_vertex(Location loc) const { return loc.row * width_ + loc.col; }
  Location to_location(VertexId v) const { return {v / width_, v % width_}; }

  /// Passable 4-neighbours of a passable cell, in the fixed order up, down,
  /// left, right.
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(VertexId u, VertexId v) const;

  int passable_count() const { return passable_count_; }
  const std::vector<uint8_t>& cells() const { return passable_; }

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.passable_ == b.passable_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  int passable_count_ = 0;
  std::vector<uint8_t> passable_;
  // CSR adjacency
  std::vector<int32_t> offsets_;
  std::vector<VertexId> adjacency_;
};

}  // namespace balance
