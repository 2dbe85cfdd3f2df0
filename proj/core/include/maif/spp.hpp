#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "maif/instance.hpp"
#include "maif/reservation.hpp"
#include "maif/solution.hpp"

namespace maif {

// Per-arrival formation-deviation cost of occupying `cell` at time `t`.
using DeviationCost = std::function<long long(Cell cell, int t)>;

// Space-time A* minimizing
//   lambda * (arrival time + Manhattan-to-goal) + (1 - lambda) * sum of
//   deviation costs over t = 1..arrival,
// avoiding reserved vertices/edges; the goal must be holdable (no later
// vertex reservation on it). Returns the path (start cell first) or nullopt
// if the horizon is exhausted.
std::optional<std::vector<Cell>> space_time_astar(const GridMap& map,
                                                  Cell start, Cell goal,
                                                  double lambda,
                                                  const Reservation& reserved,
                                                  int horizon,
                                                  const DeviationCost& dev_cost);

struct SppParams {
  double lambda = 0.5;
  std::vector<int> priority_order;  // empty: agent-index order
  int horizon = 0;                  // 0: 4 * (width + height)
};

// Scalarized prioritized planning: agents are routed sequentially by the
// low-level search against the reservations of higher-priority agents.
// Incomplete; throws NoPathError naming the first blocked agent.
Solution spp_plan(const Instance& instance, const SppParams& params);

}  // namespace maif
