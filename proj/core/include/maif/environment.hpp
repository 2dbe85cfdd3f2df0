#pragma once

#include <array>
#include <vector>

#include "maif/formation.hpp"
#include "maif/grid_map.hpp"
#include "maif/instance.hpp"

namespace maif {

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3, Wait = 4 };

inline constexpr int kNumActions = 5;
inline constexpr int kActionDx[kNumActions] = {0, 0, -1, 1, 0};
inline constexpr int kActionDy[kNumActions] = {-1, 1, 0, 0, 0};

using ActionDist = std::array<double, kNumActions>;

ActionDist one_hot(Action a);

// Per-step cost table: collision-free move or wait off goal, collision,
// arrival at goal, wait on goal.
inline constexpr double kCostStep = -0.075;
inline constexpr double kCostCollision = -0.5;
inline constexpr double kCostReachGoal = 3.0;
inline constexpr double kCostStayOnGoal = 0.0;

enum class AgentEvent { Moved, Waited, Collided, ReachedGoal, OnGoal };

struct StepOutcome {
  std::vector<AgentEvent> events;
  // (moving cost, negated per-agent formation deviation)
  std::vector<std::array<double, 2>> rewards;
};

struct EnvConfig {
  int fov = 9;      // odd FOV side length
  int t_max = 256;  // episode step cap
};

// FOV feature channels: 0 obstacle/out-of-bounds, 1 other agents, 2..6
// normalized goal distance of the up/down/left/right neighbor and the cell
// itself.
inline constexpr int kObsChannels = 2 + kNumActions;

struct Observation {
  int agent = 0;
  int fov = 0;
  double norm = 1.0;  // distance normalizer (map width + height)
  std::vector<double> features;     // kObsChannels * fov * fov, channel-major
  std::vector<Coord> rel_positions; // p^j - p^i for all j (self entry zero)
  std::vector<Coord> rel_goals;     // g^j - g^i

  double& at(int channel, int row, int col) {
    return features[(static_cast<size_t>(channel) * fov + row) * fov + col];
  }
  double at(int channel, int row, int col) const {
    return features[(static_cast<size_t>(channel) * fov + row) * fov + col];
  }
};

// Deterministic 4-neighbor grid simulator with simultaneous moves, iterative
// collision revert, and vector rewards.
class Environment {
 public:
  explicit Environment(Instance instance, EnvConfig config = {});

  Observation observe(int agent) const;
  StepOutcome step(const std::vector<Action>& joint_action);
  bool is_terminal() const;
  bool all_on_goal() const;

  // Swap in a new desired formation; distance fields and relative-goal data
  // are rebuilt, path history is kept.
  void set_desired_formation(const Formation& new_goals);

  int time() const { return time_; }
  int num_agents() const { return static_cast<int>(positions_.size()); }
  const GridMap& map() const { return instance_.map; }
  const std::vector<Cell>& positions() const { return positions_; }
  const Formation& goals() const { return instance_.goals; }
  const EnvConfig& config() const { return config_; }
  const std::vector<std::vector<Cell>>& history() const { return history_; }
  const std::vector<int>& distance_field_for(int agent) const {
    return dist_fields_[agent];
  }

  // Deviation of the current formation against the desired one.
  DeviationResult current_deviation() const;

  // Shared FOV builder, also used to rebuild observations for replayed
  // transitions.
  static Observation make_observation(const GridMap& map,
                                      const std::vector<std::vector<int>>& dist_fields,
                                      const std::vector<Cell>& positions,
                                      const Formation& goals, int agent, int fov);

 private:
  Instance instance_;
  EnvConfig config_;
  std::vector<Cell> positions_;
  std::vector<Cell> goal_cells_;
  std::vector<std::vector<int>> dist_fields_;
  std::vector<std::vector<Cell>> history_;
  int time_ = 0;
};

}  // namespace maif
