#pragma once

#include <vector>

#include "balance/grid.h"

namespace balance {

struct Agent {
  int id = 0;
  VertexId start = kNoVertex;
  VertexId goal = kNoVertex;
};

/// A map plus an ordered agent list. Construction validates that every start
/// and goal is passable and that no two agents share a start or a goal.
class Instance {
 public:
  Instance(GridMap map, std::vector<Agent> agents);

  const GridMap& map() const { return map_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(int id) const { return agents_[id]; }
  int num_agents() const { return static_cast<int>(agents_.size()); }

 private:
  GridMap map_;
  std::vector<Agent> agents_;
};

}  // namespace balance
