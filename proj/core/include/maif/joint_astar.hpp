#pragma once

#include <vector>

#include "maif/instance.hpp"
#include "maif/solution.hpp"

namespace maif {

struct JsaParams {
  std::vector<double> epsilons = {1.0};  // each >= 1
  int horizon = 0;                       // 0: 2 * (width + height)
  int max_agents = 5;                    // joint-space feasibility guard
};

// Minimum-makespan joint-state search (all agents move simultaneously; joint
// moves exclude vertex and edge collisions). Throws NoSolutionError if the
// horizon is exhausted.
int jsa_min_makespan(const Instance& instance, int horizon);

// For each epsilon, finds the minimum-total-deviation solution whose makespan
// is at most floor(epsilon * optimal makespan): nodes are ordered by
// accumulated deviation while the makespan lower bound (elapsed time plus the
// largest per-agent BFS distance) caps admission. The surviving solutions are
// Pareto-filtered and sorted by makespan.
std::vector<Solution> jsa_pareto(const Instance& instance,
                                 const JsaParams& params);

}  // namespace maif
