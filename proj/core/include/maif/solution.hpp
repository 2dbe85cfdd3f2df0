#pragma once

#include <string>
#include <vector>

#include "maif/formation.hpp"
#include "maif/grid_map.hpp"
#include "maif/instance.hpp"

namespace maif {

struct Solution {
  // paths[i][t] is agent i's cell at time t; index 0 is the start cell.
  std::vector<std::vector<Cell>> paths;
  BiObjectiveValue value;
};

enum class ViolationKind {
  None,
  BadEndpoint,
  Discontinuity,
  OffMapOrObstacle,
  VertexCollision,
  EdgeCollision,
};

struct ValidationReport {
  bool ok = true;
  ViolationKind kind = ViolationKind::None;
  int agent_a = -1;
  int agent_b = -1;
  Cell cell_a;
  Cell cell_b;
  int t = -1;
  std::string message;
};

// Checks endpoints, adjacency, map validity, and vertex/edge collisions at
// every step, with agents holding their final cell after their path ends.
// Reports the first violation found.
ValidationReport validate_solution(const Instance& instance,
                                   const Solution& solution);

std::vector<std::vector<Coord>> to_coord_paths(
    const std::vector<std::vector<Cell>>& paths);

// Recomputes the bi-objective value of the paths against the goal formation.
BiObjectiveValue score_solution(const std::vector<std::vector<Cell>>& paths,
                                const Formation& desired);

std::string encode_solution(const Solution& solution);
Solution decode_solution(const std::string& text);
void save_solution(const Solution& solution, const std::string& path);
Solution load_solution(const std::string& path);

}  // namespace maif
