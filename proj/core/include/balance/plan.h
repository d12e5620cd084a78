#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balance/grid.h"
#include "balance/instance.h"

namespace balance {

/// Timestep-indexed vertex sequence. steps[0] is the start (timestep 1 in the
/// usual 1-based notation); the agent rests at steps.back() forever after.
struct Path {
  std::vector<VertexId> steps;

  bool empty() const { return steps.empty(); }
  size_t size() const { return steps.size(); }
  VertexId at(int t) const {
    return t < static_cast<int>(steps.size()) ? steps[t] : steps.back();
  }
  VertexId goal() const { return steps.back(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// One path per agent, indexed by agent id.
struct Plan {
  std::vector<Path> paths;

  int num_agents() const { return static_cast<int>(paths.size()); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

/// Raised when a path is shorter than the claimed shortest distance.
class CostInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Drops trailing goal repetitions so the path ends at its final arrival.
void trim(Path& path);

/// Moves plus waits up to the final arrival at the goal; 0 for an agent that
/// starts on its goal and never leaves.
int path_length(const Path& path);

int delay(const Path& path, int shortest_dist);

/// Sum of per-agent delays, the solution cost c(P).
long sum_of_delays(const Plan& plan, std::span<const int> shortest_dists);

/// True iff the path starts at the agent's start, ends at its goal and every
/// step is a wait or a move to an adjacent passable cell.
bool is_well_formed(const GridMap& map, const Agent& agent, const Path& path);

enum class ConflictKind { kVertex, kEdge };

/// Canonical form keeps first_agent < second_agent. For vertex conflicts
/// `from` is the shared cell and `to` is kNoVertex; for edge conflicts the
/// first agent moves from -> to while the second moves to -> from between
/// `time` and `time + 1`. Times are 1-based.
struct Conflict {
  ConflictKind kind = ConflictKind::kVertex;
  int first_agent = 0;
  int second_agent = 0;
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;
  int time = 1;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// Every pairwise vertex and edge conflict of the plan, with agents resting
/// on their goals after their final step. Empty iff the plan is feasible.
std::vector<Conflict> validate(const Plan& plan);

std::string describe(const Conflict& conflict, const GridMap& map);

}  // namespace balance
