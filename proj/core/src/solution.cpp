#include "maif/solution.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maif/errors.hpp"

namespace maif {

namespace {

using nlohmann::json;

Cell at_time(const std::vector<Cell>& path, int t) {
  return path[std::min<size_t>(t, path.size() - 1)];
}

ValidationReport violation(ViolationKind kind, int a, int b, Cell ca, Cell cb,
                           int t, std::string message) {
  ValidationReport r;
  r.ok = false;
  r.kind = kind;
  r.agent_a = a;
  r.agent_b = b;
  r.cell_a = ca;
  r.cell_b = cb;
  r.t = t;
  r.message = std::move(message);
  return r;
}

std::string cell_str(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

ValidationReport validate_solution(const Instance& instance,
                                   const Solution& solution) {
  const auto& paths = solution.paths;
  const int m = static_cast<int>(paths.size());
  if (m != instance.starts.num_agents())
    return violation(ViolationKind::BadEndpoint, -1, -1, {}, {}, -1,
                     "path count differs from instance agent count");
  const auto starts = to_cells(instance.starts);
  const auto goals = to_cells(instance.goals);
  int makespan = 0;
  for (int i = 0; i < m; ++i) {
    if (paths[i].empty())
      return violation(ViolationKind::BadEndpoint, i, -1, {}, {}, -1,
                       "agent " + std::to_string(i) + " has an empty path");
    if (paths[i].front() != starts[i])
      return violation(ViolationKind::BadEndpoint, i, -1, paths[i].front(), {},
                       0, "agent " + std::to_string(i) + " does not start at its start cell");
    if (paths[i].back() != goals[i])
      return violation(ViolationKind::BadEndpoint, i, -1, paths[i].back(), {},
                       static_cast<int>(paths[i].size()) - 1,
                       "agent " + std::to_string(i) + " does not end at its goal cell");
    makespan = std::max(makespan, static_cast<int>(paths[i].size()) - 1);
    for (size_t t = 0; t < paths[i].size(); ++t) {
      const Cell c = paths[i][t];
      if (!instance.map.free_cell(c))
        return violation(ViolationKind::OffMapOrObstacle, i, -1, c, {},
                         static_cast<int>(t),
                         "agent " + std::to_string(i) + " occupies blocked cell " +
                             cell_str(c) + " at t=" + std::to_string(t));
      if (t > 0) {
        const Cell p = paths[i][t - 1];
        const int step = std::abs(c.x - p.x) + std::abs(c.y - p.y);
        if (step > 1)
          return violation(ViolationKind::Discontinuity, i, -1, p, c,
                           static_cast<int>(t),
                           "agent " + std::to_string(i) + " jumps from " +
                               cell_str(p) + " to " + cell_str(c));
      }
    }
  }
  for (int t = 0; t <= makespan; ++t) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const Cell ci = at_time(paths[i], t);
        const Cell cj = at_time(paths[j], t);
        if (ci == cj)
          return violation(ViolationKind::VertexCollision, i, j, ci, cj, t,
                           "agents " + std::to_string(i) + " and " +
                               std::to_string(j) + " occupy " + cell_str(ci) +
                               " at t=" + std::to_string(t));
        if (t > 0) {
          const Cell pi = at_time(paths[i], t - 1);
          const Cell pj = at_time(paths[j], t - 1);
          if (ci == pj && cj == pi && ci != pi)
            return violation(ViolationKind::EdgeCollision, i, j, pi, pj, t,
                             "agents " + std::to_string(i) + " and " +
                                 std::to_string(j) + " swap " + cell_str(pi) +
                                 "<->" + cell_str(pj) + " at t=" + std::to_string(t));
        }
      }
    }
  }
  return {};
}

std::vector<std::vector<Coord>> to_coord_paths(
    const std::vector<std::vector<Cell>>& paths) {
  std::vector<std::vector<Coord>> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    std::vector<Coord> cp;
    cp.reserve(p.size());
    for (const Cell& c : p) cp.push_back({c.x, c.y});
    out.push_back(std::move(cp));
  }
  return out;
}

BiObjectiveValue score_solution(const std::vector<std::vector<Cell>>& paths,
                                const Formation& desired) {
  return evaluate_solution(to_coord_paths(paths), desired);
}

std::string encode_solution(const Solution& solution) {
  json j;
  j["version"] = "maif/1";
  j["kind"] = "solution";
  json paths = json::array();
  for (const auto& p : solution.paths) {
    json path = json::array();
    for (const Cell& c : p) path.push_back({c.x, c.y});
    paths.push_back(path);
  }
  j["paths"] = paths;
  j["value"] = {{"makespan", solution.value.makespan},
                {"form_dev_avg", solution.value.form_dev_avg}};
  return j.dump(2) + "\n";
}

Solution decode_solution(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InvalidInputError("solution is not valid JSON");
  if (j.value("version", "") != "maif/1" || j.value("kind", "") != "solution")
    throw InvalidInputError("not a maif/1 solution file");
  Solution s;
  for (const auto& path : j.at("paths")) {
    std::vector<Cell> cells;
    for (const auto& c : path) cells.push_back({c[0].get<int>(), c[1].get<int>()});
    s.paths.push_back(std::move(cells));
  }
  s.value.makespan = j.at("value").at("makespan").get<double>();
  s.value.form_dev_avg = j.at("value").at("form_dev_avg").get<double>();
  return s;
}

void save_solution(const Solution& solution, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InvalidInputError("cannot open solution file for writing: " + path);
  out << encode_solution(solution);
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open solution file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_solution(buf.str());
}

}  // namespace maif
