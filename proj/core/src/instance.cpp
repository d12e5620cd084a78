#include "balance/instance.h"

#include <stdexcept>
#include <string>

namespace balance {

Instance::Instance(GridMap map, std::vector<Agent> agents)
    : map_(std::move(map)), agents_(std::move(agents)) {
  std::vector<int> start_owner(map_.size(), -1);
  std::vector<int> goal_owner(map_.size(), -1);
  for (size_t i = 0; i < agents_.size(); ++i) {
    const Agent& a = agents_[i];
    if (a.id != static_cast<int>(i))
      throw std::invalid_argument("agent ids must be 0..m-1 in order");
    if (!map_.passable(a.start))
      throw std::invalid_argument("agent " + std::to_string(i) + " starts on a blocked cell");
    if (!map_.passable(a.goal))
      throw std::invalid_argument("agent " + std::to_string(i) + " has a blocked goal");
    if (start_owner[a.start] >= 0)
      throw std::invalid_argument("agents " + std::to_string(start_owner[a.start]) + " and " +
                                  std::to_string(i) + " share a start");
    if (goal_owner[a.goal] >= 0)
      throw std::invalid_argument("agents " + std::to_string(goal_owner[a.goal]) + " and " +
                                  std::to_string(i) + " share a goal");
    start_owner[a.start] = static_cast<int>(i);
    goal_owner[a.goal] = static_cast<int>(i);
  }
}

}  // namespace balance
