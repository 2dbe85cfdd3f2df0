#include "maif/joint_astar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "maif/environment.hpp"
#include "maif/errors.hpp"

namespace maif {

namespace {

using JointPos = std::vector<Cell>;

struct SearchContext {
  const Instance& instance;
  std::vector<Cell> starts;
  std::vector<Cell> goals;
  std::vector<std::vector<int>> dist_fields;
  int horizon;

  int makespan_h(const JointPos& pos) const {
    int h = 0;
    for (size_t i = 0; i < pos.size(); ++i) {
      const int d = dist_fields[i][static_cast<size_t>(pos[i].y) *
                                       instance.map.width + pos[i].x];
      h = std::max(h, d);
    }
    return h;
  }

  long long formation_cost(const JointPos& pos) const {
    return deviation(to_formation(pos), instance.goals).total;
  }

  // All collision-free joint successors, lexicographic by per-agent action.
  void successors(const JointPos& pos, std::vector<JointPos>& out) const {
    out.clear();
    const int m = static_cast<int>(pos.size());
    JointPos next(m);
    std::vector<int> act(m, 0);
    for (;;) {
      bool valid = true;
      for (int i = 0; i < m && valid; ++i) {
        const Cell c{pos[i].x + kActionDx[act[i]], pos[i].y + kActionDy[act[i]]};
        if (act[i] != static_cast<int>(Action::Wait) &&
            !instance.map.free_cell(c)) {
          valid = false;
          break;
        }
        next[i] = c;
        for (int j = 0; j < i; ++j) {
          if (next[j] == c ||                       // vertex
              (next[j] == pos[i] && c == pos[j])) { // edge swap
            valid = false;
            break;
          }
        }
      }
      if (valid) out.push_back(next);
      int k = m - 1;
      while (k >= 0 && ++act[k] == kNumActions) act[k--] = 0;
      if (k < 0) break;
    }
  }
};

SearchContext make_context(const Instance& instance, int horizon) {
  validate_endpoints(instance.map, instance.starts, instance.goals);
  SearchContext ctx{instance,
                    to_cells(instance.starts),
                    to_cells(instance.goals),
                    {},
                    horizon};
  for (const Cell& g : ctx.goals)
    ctx.dist_fields.push_back(distance_field(instance.map, g));
  return ctx;
}

struct DevNode {
  long long dev;
  int bound;
  int t;
  int64_t id;

  bool operator>(const DevNode& o) const {
    if (dev != o.dev) return dev > o.dev;
    if (bound != o.bound) return bound > o.bound;
    if (t != o.t) return t > o.t;
    return id > o.id;
  }
};

// Minimum accumulated deviation to reach the goal configuration within the
// makespan bound; ties prefer the earliest arrival. Returns paths or empty.
std::vector<std::vector<Cell>> bounded_min_deviation(const SearchContext& ctx,
                                                     int bound) {
  struct Stored {
    JointPos pos;
    int t;
    long long dev;
    int64_t parent;
  };
  std::vector<Stored> arena;
  std::map<JointPos, std::vector<std::pair<int, long long>>> labels;

  auto dominated = [&](const JointPos& pos, int t, long long dev) {
    const auto it = labels.find(pos);
    if (it == labels.end()) return false;
    for (const auto& [lt, ldev] : it->second)
      if (lt <= t && ldev <= dev) return true;
    return false;
  };
  auto add_label = [&](const JointPos& pos, int t, long long dev) {
    auto& list = labels[pos];
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const auto& l) {
                                return t <= l.first && dev <= l.second;
                              }),
               list.end());
    list.emplace_back(t, dev);
  };
  auto still_active = [&](const JointPos& pos, int t, long long dev) {
    const auto it = labels.find(pos);
    if (it == labels.end()) return false;
    for (const auto& [lt, ldev] : it->second)
      if (lt == t && ldev == dev) return true;
    return false;
  };

  std::priority_queue<DevNode, std::vector<DevNode>, std::greater<DevNode>> open;
  if (ctx.makespan_h(ctx.starts) > bound) return {};
  arena.push_back({ctx.starts, 0, 0, -1});
  add_label(ctx.starts, 0, 0);
  open.push({0, ctx.makespan_h(ctx.starts), 0, 0});

  std::vector<JointPos> succs;
  while (!open.empty()) {
    const DevNode node = open.top();
    open.pop();
    const Stored cur = arena[node.id];
    if (!still_active(cur.pos, cur.t, cur.dev)) continue;
    if (cur.pos == ctx.goals) {
      std::vector<std::vector<Cell>> paths(cur.pos.size());
      for (int64_t id = node.id; id >= 0; id = arena[id].parent)
        for (size_t i = 0; i < paths.size(); ++i)
          paths[i].push_back(arena[id].pos[i]);
      for (auto& p : paths) std::reverse(p.begin(), p.end());
      return paths;
    }
    if (cur.t >= bound) continue;
    ctx.successors(cur.pos, succs);
    for (const JointPos& next : succs) {
      const int nt = cur.t + 1;
      if (nt + ctx.makespan_h(next) > bound) continue;
      const long long ndev = cur.dev + ctx.formation_cost(next);
      if (dominated(next, nt, ndev)) continue;
      add_label(next, nt, ndev);
      arena.push_back({next, nt, ndev, node.id});
      open.push({ndev, nt + ctx.makespan_h(next),
                 nt, static_cast<int64_t>(arena.size()) - 1});
    }
  }
  return {};
}

}  // namespace

int jsa_min_makespan(const Instance& instance, int horizon) {
  SearchContext ctx = make_context(instance, horizon);
  // Uniform step cost: best-first on t + h with a closed set over positions.
  struct MkNode {
    int f, t;
    int64_t id;
    bool operator>(const MkNode& o) const {
      if (f != o.f) return f > o.f;
      if (t != o.t) return t < o.t;
      return id > o.id;
    }
  };
  std::vector<std::pair<JointPos, int64_t>> arena;
  std::set<JointPos> closed;
  std::priority_queue<MkNode, std::vector<MkNode>, std::greater<MkNode>> open;
  arena.push_back({ctx.starts, -1});
  open.push({ctx.makespan_h(ctx.starts), 0, 0});
  std::vector<JointPos> succs;
  while (!open.empty()) {
    const MkNode node = open.top();
    open.pop();
    const JointPos pos = arena[node.id].first;
    if (!closed.insert(pos).second) continue;
    if (pos == ctx.goals) return node.t;
    if (node.t >= horizon) continue;
    ctx.successors(pos, succs);
    for (const JointPos& next : succs) {
      if (closed.count(next)) continue;
      const int nt = node.t + 1;
      if (nt + ctx.makespan_h(next) > horizon) continue;
      arena.push_back({next, node.id});
      open.push({nt + ctx.makespan_h(next), nt,
                 static_cast<int64_t>(arena.size()) - 1});
    }
  }
  throw NoSolutionError("joint search exhausted horizon " +
                        std::to_string(horizon));
}

std::vector<Solution> jsa_pareto(const Instance& instance,
                                 const JsaParams& params) {
  const int m = instance.starts.num_agents();
  if (m > params.max_agents)
    throw FeasibilityError("joint search limited to " +
                           std::to_string(params.max_agents) + " agents");
  for (double eps : params.epsilons)
    if (eps < 1.0) throw InvalidInputError("epsilon must be >= 1");
  const int horizon = params.horizon > 0
                          ? params.horizon
                          : 2 * (instance.map.width + instance.map.height);

  const int t_star = jsa_min_makespan(instance, horizon);
  SearchContext ctx = make_context(instance, horizon);

  std::set<int> bounds;
  for (double eps : params.epsilons)
    bounds.insert(std::min(horizon, static_cast<int>(std::floor(
                                        eps * t_star + 1e-9))));

  std::vector<Solution> solutions;
  for (int bound : bounds) {
    auto paths = bounded_min_deviation(ctx, bound);
    if (paths.empty()) continue;
    Solution s;
    s.paths = std::move(paths);
    s.value = score_solution(s.paths, instance.goals);
    solutions.push_back(std::move(s));
  }

  // Keep only mutually non-dominated values, one solution per value.
  std::vector<Solution> frontier;
  for (const auto& s : solutions) {
    bool keep = true;
    for (const auto& o : solutions) {
      if (dominates(o.value, s.value) && !(o.value == s.value)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    if (std::none_of(frontier.begin(), frontier.end(), [&](const Solution& f) {
          return f.value == s.value;
        }))
      frontier.push_back(s);
  }
  std::sort(frontier.begin(), frontier.end(),
            [](const Solution& a, const Solution& b) {
              return a.value.makespan < b.value.makespan;
            });
  return frontier;
}

}  // namespace maif
