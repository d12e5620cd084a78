#include "balance/reservation_table.h"

namespace balance {

ReservationTable::ReservationTable(int num_vertices)
    : slots_(num_vertices), parked_from_(num_vertices, kNever), parked_agent_(num_vertices, -1) {}

void ReservationTable::add(int agent, const Path& path) {
  if (path.empty()) return;
  for (size_t t = 0; t < path.steps.size(); ++t) {
    auto& slot = slots_[path.steps[t]];
    if (slot.size() <= t) slot.resize(t + 1, -1);
    slot[t] = agent;
  }
  const VertexId goal = path.goal();
  parked_from_[goal] = static_cast<int>(path.steps.size()) - 1;
  parked_agent_[goal] = agent;
  ++path_sizes_[static_cast<int>(path.steps.size())];
}

void ReservationTable::remove(int agent, const Path& path) {
  if (path.empty()) return;
  for (size_t t = 0; t < path.steps.size(); ++t) {
    auto& slot = slots_[path.steps[t]];
    if (t < slot.size() && slot[t] == agent) slot[t] = -1;
    while (!slot.empty() && slot.back() < 0) slot.pop_back();
  }
  const VertexId goal = path.goal();
  if (parked_agent_[goal] == agent) {
    parked_from_[goal] = kNever;
    parked_agent_[goal] = -1;
  }
  auto it = path_sizes_.find(static_cast<int>(path.steps.size()));
  if (it != path_sizes_.end() && --it->second == 0) path_sizes_.erase(it);
}

}  // namespace balance
