#pragma once

#include <string>
#include <vector>

#include "maif/formation.hpp"
#include "maif/grid_map.hpp"

namespace maif {

class Rng;

struct FormationChange {
  int t_threshold = 0;
  Formation goals;
};

// Scenario file contents: agent endpoints plus an optional dynamic-formation
// schedule.
struct Scenario {
  Formation starts;
  Formation goals;
  std::vector<FormationChange> schedule;
};

struct Instance {
  GridMap map;
  Formation starts;
  Formation goals;
};

Formation to_formation(const std::vector<Cell>& cells);
std::vector<Cell> to_cells(const Formation& formation);

// Validates endpoints: in-bounds free cells, pairwise-distinct starts,
// pairwise-distinct goals.
Instance make_instance(GridMap map, const Scenario& scenario);
void validate_endpoints(const GridMap& map, const Formation& starts,
                        const Formation& goals);

// Desired formation: num_agents distinct cells sampled uniformly in the
// bottom-right corner box; the start formation repeats the same pattern in
// the top-left box.
Scenario sample_scenario(const GridMap& map, int corner, int num_agents,
                         Rng& rng);

std::string encode_scenario(const Scenario& scenario);
Scenario decode_scenario(const std::string& text);
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace maif
