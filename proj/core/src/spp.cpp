#include "maif/spp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "maif/environment.hpp"
#include "maif/errors.hpp"

namespace maif {

namespace {

struct Node {
  double f;
  double g_scalar;
  int t, x, y;
  int64_t id;

  // min-heap on f; ties prefer deeper nodes, then (t, y, x) ascending.
  bool operator>(const Node& o) const {
    if (f != o.f) return f > o.f;
    if (g_scalar != o.g_scalar) return g_scalar < o.g_scalar;
    if (t != o.t) return t > o.t;
    if (y != o.y) return y > o.y;
    return x > o.x;
  }
};

int manhattan(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

}  // namespace

std::optional<std::vector<Cell>> space_time_astar(
    const GridMap& map, Cell start, Cell goal, double lambda,
    const Reservation& reserved, int horizon, const DeviationCost& dev_cost) {
  if (!map.free_cell(start) || !map.free_cell(goal))
    throw InvalidInputError("start and goal must be free in-bounds cells");
  if (lambda < 0.0 || lambda > 1.0)
    throw InvalidInputError("lambda must lie in [0, 1]");
  if (horizon < 1) throw InvalidInputError("horizon must be positive");
  if (reserved.vertex_reserved(start, 0)) return std::nullopt;

  const auto state_key = [&](int x, int y, int t) {
    return (static_cast<int64_t>(t) * map.height + y) * map.width + x;
  };
  struct Label {
    double g_scalar;
    int64_t parent;
    int action;
  };
  std::unordered_map<int64_t, Label> labels;
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;

  const int64_t root = state_key(start.x, start.y, 0);
  labels[root] = {0.0, -1, -1};
  open.push({lambda * manhattan(start, goal), 0.0, 0, start.x, start.y, root});
  const int last_goal_reserve = reserved.last_vertex_time(goal);

  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    const auto it = labels.find(node.id);
    if (node.g_scalar > it->second.g_scalar) continue;  // stale entry
    const Cell cur{node.x, node.y};
    if (cur == goal && node.t >= last_goal_reserve) {
      std::vector<Cell> path;
      for (int64_t id = node.id; id >= 0; id = labels.at(id).parent) {
        path.push_back({static_cast<int>(id % map.width),
                        static_cast<int>((id / map.width) % map.height)});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (node.t >= horizon) continue;
    for (int a = 0; a < kNumActions; ++a) {
      const Cell next{cur.x + kActionDx[a], cur.y + kActionDy[a]};
      if (!map.free_cell(next)) continue;
      const int nt = node.t + 1;
      if (reserved.vertex_reserved(next, nt)) continue;
      if (!(next == cur) && reserved.edge_reserved(cur, next, nt)) continue;
      const double g = node.g_scalar + lambda +
                       (1.0 - lambda) * static_cast<double>(dev_cost(next, nt));
      const int64_t key = state_key(next.x, next.y, nt);
      auto [lit, inserted] = labels.try_emplace(key, Label{g, node.id, a});
      if (!inserted) {
        if (g >= lit->second.g_scalar) continue;
        lit->second = {g, node.id, a};
      }
      open.push({g + lambda * manhattan(next, goal), g, nt, next.x, next.y, key});
    }
  }
  return std::nullopt;
}

Solution spp_plan(const Instance& instance, const SppParams& params) {
  validate_endpoints(instance.map, instance.starts, instance.goals);
  const int m = instance.starts.num_agents();
  std::vector<int> order = params.priority_order;
  if (order.empty()) {
    order.resize(m);
    for (int i = 0; i < m; ++i) order[i] = i;
  }
  {
    std::vector<bool> seen(m, false);
    if (static_cast<int>(order.size()) != m)
      throw InvalidInputError("priority order must cover every agent");
    for (int i : order) {
      if (i < 0 || i >= m || seen[i])
        throw InvalidInputError("priority order must be a permutation");
      seen[i] = true;
    }
  }
  const int horizon = params.horizon > 0
                          ? params.horizon
                          : 4 * (instance.map.width + instance.map.height);
  const auto starts = to_cells(instance.starts);
  const auto goals = to_cells(instance.goals);

  Reservation reserved(instance.map.width, instance.map.height, horizon);
  std::vector<std::vector<Cell>> paths(m);
  std::vector<int> planned;  // higher-priority agents, in planning order

  for (int rank = 0; rank < m; ++rank) {
    const int agent = order[rank];
    // Partial deviation: this agent's share of the deviation over the
    // sub-formation of already-planned agents plus itself.
    const auto dev_cost = [&](Cell cell, int t) -> long long {
      if (planned.empty()) return 0;
      Formation current, desired;
      for (int j : planned) {
        const auto& p = paths[j];
        const Cell c = p[std::min<size_t>(t, p.size() - 1)];
        current.positions.push_back({c.x, c.y});
        desired.positions.push_back({goals[j].x, goals[j].y});
      }
      current.positions.push_back({cell.x, cell.y});
      desired.positions.push_back({goals[agent].x, goals[agent].y});
      return deviation(current, desired).per_agent.back();
    };
    auto path = space_time_astar(instance.map, starts[agent], goals[agent],
                                 params.lambda, reserved, horizon, dev_cost);
    if (!path)
      throw NoPathError(agent, "no path for agent " + std::to_string(agent) +
                                   " within horizon " + std::to_string(horizon));
    reserved.reserve_path(*path);
    paths[agent] = std::move(*path);
    planned.push_back(agent);
  }

  Solution solution;
  solution.paths = std::move(paths);
  solution.value = score_solution(solution.paths, instance.goals);
  return solution;
}

}  // namespace maif
