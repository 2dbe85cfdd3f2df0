#include "maif/instance.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "maif/errors.hpp"
#include "maif/rng.hpp"

namespace maif {

namespace {

using nlohmann::json;

json formation_to_json(const Formation& f) {
  json arr = json::array();
  for (const auto& p : f.positions) arr.push_back({p[0], p[1]});
  return arr;
}

Formation formation_from_json(const json& arr) {
  Formation f;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2)
      throw InvalidInputError("scenario positions must be [x, y] pairs");
    f.positions.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return f;
}

}  // namespace

Formation to_formation(const std::vector<Cell>& cells) {
  Formation f;
  f.positions.reserve(cells.size());
  for (const Cell& c : cells) f.positions.push_back({c.x, c.y});
  return f;
}

std::vector<Cell> to_cells(const Formation& formation) {
  if (formation.dim() != 2)
    throw InvalidInputError("grid formations must be 2-dimensional");
  std::vector<Cell> cells;
  cells.reserve(formation.positions.size());
  for (const auto& p : formation.positions) cells.push_back({p[0], p[1]});
  return cells;
}

void validate_endpoints(const GridMap& map, const Formation& starts,
                        const Formation& goals) {
  if (starts.num_agents() < 1 || starts.num_agents() != goals.num_agents())
    throw InvalidInputError("starts and goals must list the same agents");
  auto check = [&](const Formation& f, const char* what) {
    std::set<Cell> seen;
    for (const Cell& c : to_cells(f)) {
      if (!map.free_cell(c))
        throw InvalidInputError(std::string(what) + " not on a free in-bounds cell");
      if (!seen.insert(c).second)
        throw InvalidInputError(std::string("two agents share a ") + what);
    }
  };
  check(starts, "start");
  check(goals, "goal");
}

Instance make_instance(GridMap map, const Scenario& scenario) {
  validate_endpoints(map, scenario.starts, scenario.goals);
  return {std::move(map), scenario.starts, scenario.goals};
}

Scenario sample_scenario(const GridMap& map, int corner, int num_agents,
                         Rng& rng) {
  if (corner < 1 || corner > std::min(map.width, map.height))
    throw GenerationError("corner box does not fit the map");
  if (num_agents < 1 || num_agents > corner * corner)
    throw GenerationError("corner box too small for the agent count");
  std::vector<int> slots(static_cast<size_t>(corner) * corner);
  std::iota(slots.begin(), slots.end(), 0);
  rng.shuffle(slots);
  Scenario s;
  for (int i = 0; i < num_agents; ++i) {
    const int bx = slots[i] % corner;
    const int by = slots[i] / corner;
    s.starts.positions.push_back({bx, by});
    s.goals.positions.push_back({map.width - corner + bx, map.height - corner + by});
  }
  return s;
}

std::string encode_scenario(const Scenario& scenario) {
  json j;
  j["version"] = "maif/1";
  j["kind"] = "scenario";
  j["agents"] = scenario.starts.num_agents();
  j["starts"] = formation_to_json(scenario.starts);
  j["goals"] = formation_to_json(scenario.goals);
  json sched = json::array();
  for (const auto& change : scenario.schedule)
    sched.push_back({{"t", change.t_threshold},
                     {"goals", formation_to_json(change.goals)}});
  j["schedule"] = sched;
  return j.dump(2) + "\n";
}

Scenario decode_scenario(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InvalidInputError("scenario is not valid JSON");
  if (j.value("version", "") != "maif/1" || j.value("kind", "") != "scenario")
    throw InvalidInputError("not a maif/1 scenario file");
  Scenario s;
  s.starts = formation_from_json(j.at("starts"));
  s.goals = formation_from_json(j.at("goals"));
  if (j.value("agents", -1) != s.starts.num_agents())
    throw InvalidInputError("scenario agent count mismatch");
  if (s.starts.num_agents() != s.goals.num_agents())
    throw InvalidInputError("scenario starts/goals size mismatch");
  for (const auto& entry : j.value("schedule", json::array()))
    s.schedule.push_back({entry.at("t").get<int>(),
                          formation_from_json(entry.at("goals"))});
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InvalidInputError("cannot open scenario file for writing: " + path);
  out << encode_scenario(scenario);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_scenario(buf.str());
}

}  // namespace maif
