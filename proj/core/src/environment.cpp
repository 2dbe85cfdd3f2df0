#include "maif/environment.hpp"

#include <algorithm>
#include <map>

#include "maif/errors.hpp"

namespace maif {

ActionDist one_hot(Action a) {
  ActionDist v{};
  v[static_cast<int>(a)] = 1.0;
  return v;
}

Environment::Environment(Instance instance, EnvConfig config)
    : instance_(std::move(instance)), config_(config) {
  if (config_.fov < 1 || config_.fov % 2 == 0)
    throw InvalidInputError("FOV side length must be odd");
  if (config_.t_max < 1) throw InvalidInputError("t_max must be positive");
  validate_endpoints(instance_.map, instance_.starts, instance_.goals);
  positions_ = to_cells(instance_.starts);
  goal_cells_ = to_cells(instance_.goals);
  dist_fields_.reserve(goal_cells_.size());
  for (const Cell& g : goal_cells_)
    dist_fields_.push_back(distance_field(instance_.map, g));
  history_.push_back(positions_);
}

Observation Environment::make_observation(
    const GridMap& map, const std::vector<std::vector<int>>& dist_fields,
    const std::vector<Cell>& positions, const Formation& goals, int agent,
    int fov) {
  const int m = static_cast<int>(positions.size());
  const int radius = fov / 2;
  Observation obs;
  obs.agent = agent;
  obs.fov = fov;
  obs.norm = static_cast<double>(map.width + map.height);
  obs.features.assign(static_cast<size_t>(kObsChannels) * fov * fov, 0.0);
  const Cell self = positions[agent];
  const auto& dist = dist_fields[agent];
  auto norm_dist = [&](Cell c) {
    if (!map.free_cell(c)) return 1.0;
    const int d = dist[static_cast<size_t>(c.y) * map.width + c.x];
    if (d >= kDistUnreachable) return 1.0;
    return std::min(1.0, static_cast<double>(d) / obs.norm);
  };
  for (int row = 0; row < fov; ++row) {
    for (int col = 0; col < fov; ++col) {
      const Cell c{self.x + col - radius, self.y + row - radius};
      if (map.blocked(c)) obs.at(0, row, col) = 1.0;
      for (int j = 0; j < m; ++j)
        if (j != agent && positions[j] == c) obs.at(1, row, col) = 1.0;
      for (int a = 0; a < kNumActions; ++a)
        obs.at(2 + a, row, col) =
            norm_dist({c.x + kActionDx[a], c.y + kActionDy[a]});
    }
  }
  obs.rel_positions.reserve(m);
  obs.rel_goals.reserve(m);
  const auto& gp = goals.positions;
  for (int j = 0; j < m; ++j) {
    obs.rel_positions.push_back(
        {positions[j].x - self.x, positions[j].y - self.y});
    obs.rel_goals.push_back(
        {gp[j][0] - gp[agent][0], gp[j][1] - gp[agent][1]});
  }
  return obs;
}

Observation Environment::observe(int agent) const {
  if (agent < 0 || agent >= num_agents())
    throw InvalidInputError("agent index out of range");
  return make_observation(instance_.map, dist_fields_, positions_,
                          instance_.goals, agent, config_.fov);
}

StepOutcome Environment::step(const std::vector<Action>& joint_action) {
  const int m = num_agents();
  if (static_cast<int>(joint_action.size()) != m)
    throw InvalidInputError("joint action must list one action per agent");

  std::vector<Cell> target(m);
  std::vector<bool> collided(m, false);
  for (int i = 0; i < m; ++i) {
    const int a = static_cast<int>(joint_action[i]);
    if (a < 0 || a >= kNumActions)
      throw InvalidInputError("malformed action");
    Cell t{positions_[i].x + kActionDx[a], positions_[i].y + kActionDy[a]};
    if (joint_action[i] != Action::Wait && instance_.map.blocked(t)) {
      collided[i] = true;
      t = positions_[i];
    }
    target[i] = t;
  }

  // Revert conflicting movers until a fixed point; all parties of a conflict
  // revert simultaneously, so the result is order-independent.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Cell, int> occupancy;
    for (int i = 0; i < m; ++i) ++occupancy[target[i]];
    for (int i = 0; i < m; ++i) {
      if (target[i] == positions_[i]) continue;
      if (occupancy[target[i]] > 1) {
        collided[i] = true;
        target[i] = positions_[i];
        changed = true;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (target[i] == positions_[i]) continue;
      for (int j = i + 1; j < m; ++j) {
        if (target[j] == positions_[j]) continue;
        if (target[i] == positions_[j] && target[j] == positions_[i]) {
          collided[i] = collided[j] = true;
          target[i] = positions_[i];
          target[j] = positions_[j];
          changed = true;
        }
      }
    }
  }

  StepOutcome outcome;
  outcome.events.resize(m);
  outcome.rewards.resize(m);
  std::vector<bool> was_on_goal(m);
  for (int i = 0; i < m; ++i) was_on_goal[i] = positions_[i] == goal_cells_[i];
  positions_ = target;
  ++time_;
  history_.push_back(positions_);

  const DeviationResult dev = current_deviation();
  for (int i = 0; i < m; ++i) {
    const bool on_goal = positions_[i] == goal_cells_[i];
    double cost;
    if (collided[i]) {
      outcome.events[i] = AgentEvent::Collided;
      cost = kCostCollision;
    } else if (on_goal && !was_on_goal[i]) {
      outcome.events[i] = AgentEvent::ReachedGoal;
      cost = kCostReachGoal;
    } else if (on_goal) {
      outcome.events[i] = AgentEvent::OnGoal;
      cost = kCostStayOnGoal;
    } else if (joint_action[i] != Action::Wait) {
      outcome.events[i] = AgentEvent::Moved;
      cost = kCostStep;
    } else {
      outcome.events[i] = AgentEvent::Waited;
      cost = kCostStep;
    }
    outcome.rewards[i] = {cost, -static_cast<double>(dev.per_agent[i])};
  }
  return outcome;
}

bool Environment::all_on_goal() const {
  for (int i = 0; i < num_agents(); ++i)
    if (positions_[i] != goal_cells_[i]) return false;
  return true;
}

bool Environment::is_terminal() const {
  return all_on_goal() || time_ >= config_.t_max;
}

void Environment::set_desired_formation(const Formation& new_goals) {
  validate_endpoints(instance_.map, instance_.starts, new_goals);
  if (new_goals.num_agents() != num_agents())
    throw InvalidInputError("new formation must keep the agent count");
  instance_.goals = new_goals;
  goal_cells_ = to_cells(new_goals);
  dist_fields_.clear();
  for (const Cell& g : goal_cells_)
    dist_fields_.push_back(distance_field(instance_.map, g));
}

DeviationResult Environment::current_deviation() const {
  return deviation(to_formation(positions_), instance_.goals);
}

}  // namespace maif
