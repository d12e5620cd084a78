#pragma once

#include <limits>
#include <map>
#include <vector>

#include "balance/grid.h"
#include "balance/plan.h"

namespace balance {

inline constexpr int kNever = std::numeric_limits<int>::max();

/// Space-time occupancy of a set of fixed paths. A path of k steps reserves
/// (steps[t], t) for t < k, the edges it traverses, and its goal from k - 1
/// onward. Timesteps here are 0-based.
///
/// Paths must be mutually conflict-free; each (cell, timestep) slot holds at
/// most one agent.
class ReservationTable {
 public:
  explicit ReservationTable(int num_vertices);

  void add(int agent, const Path& path);
  /// Exact inverse of add for the same (agent, path).
  void remove(int agent, const Path& path);

  bool vertex_free(VertexId v, int t) const {
    return parked_from_[v] > t && !(t < static_cast<int>(slots_[v].size()) && slots_[v][t] >= 0);
  }
  /// Whether moving from -> to between t and t + 1 avoids swapping with a
  /// reserved agent.
  bool edge_free(VertexId from, VertexId to, int t) const {
    const int a = occupant(to, t);
    return a < 0 || occupant(from, t + 1) != a;
  }

  /// Agent standing on v at t (including a parked one), or -1.
  int occupant(VertexId v, int t) const {
    if (t < static_cast<int>(slots_[v].size()) && slots_[v][t] >= 0) return slots_[v][t];
    return parked_from_[v] <= t ? parked_agent_[v] : -1;
  }

  /// Last timestep at which a reserved path stands on v, -1 if none.
  int last_visit(VertexId v) const { return static_cast<int>(slots_[v].size()) - 1; }
  /// First timestep from which an agent rests on v forever, kNever if none.
  int parked_from(VertexId v) const { return parked_from_[v]; }

  /// Largest number of steps among reserved paths, 0 when empty.
  int longest_path() const { return path_sizes_.empty() ? 0 : path_sizes_.rbegin()->first; }
  bool empty() const { return path_sizes_.empty(); }

  friend bool operator==(const ReservationTable&, const ReservationTable&) = default;

 private:
  std::vector<std::vector<int>> slots_;
  std::vector<int> parked_from_;
  std::vector<int> parked_agent_;
  std::map<int, int> path_sizes_;  // size -> multiplicity
};

}  // namespace balance
