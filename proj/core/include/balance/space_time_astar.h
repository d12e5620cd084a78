#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balance/distance.h"
#include "balance/grid.h"
#include "balance/instance.h"
#include "balance/plan.h"
#include "balance/reservation_table.h"

namespace balance {

/// Extra timesteps granted beyond the longest reserved path plus the map's
/// width and height.
inline constexpr int kHorizonSlack = 32;

/// Latest arrival timestep searched when planning against `table`.
int planning_horizon(const GridMap& map, const ReservationTable& table);

/// Space-time A* over (cell, timestep) with unit moves and waits. Finds a
/// minimum-length path that respects every reservation and can rest on its
/// goal forever, or nothing if none arrives by `t_max`.
///
/// The object owns its scratch buffers; reuse one instance across calls.
class SpaceTimeAStar {
 public:
  std::optional<Path> plan(const GridMap& map, const Agent& agent, const ReservationTable& table,
                           const DistanceField& dist, int t_max);

  /// Nodes expanded by the last call.
  int64_t expanded() const { return expanded_; }

 private:
  struct Node {
    VertexId vertex;
    int time;
    int parent;
  };
  std::vector<Node> nodes_;
  std::vector<uint32_t> seen_;  // stamp per (time, vertex)
  uint32_t stamp_ = 0;
  int64_t expanded_ = 0;
};

std::optional<Path> plan_path(const GridMap& map, const Agent& agent, const ReservationTable& table,
                              const DistanceField& dist, int t_max);

}  // namespace balance
