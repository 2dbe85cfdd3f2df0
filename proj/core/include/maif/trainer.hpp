#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maif/checkpoint.hpp"
#include "maif/instance.hpp"

namespace maif {

class Rng;

struct CurriculumStage {
  int width = 8;
  int height = 8;
  int agents = 2;
  friend bool operator==(const CurriculumStage&, const CurriculumStage&) = default;
};

struct TrainingConfig {
  double gamma = 0.95;
  double beta_start = 0.5;   // Boltzmann schedule endpoints
  double beta_end = 8.0;
  double zeta_fraction = 0.8;  // episode fraction over which zeta ramps 0 -> 1
  double alpha = 0.01;         // target-network soft-update rate
  int batch_size = 16;
  int num_preferences = 4;     // preferences sampled per update
  int64_t episodes = 10000;
  int t_max = 64;
  double pref_step = 0.01;     // preference grid: lambda in {0, step, ...} < 1
  std::vector<CurriculumStage> curriculum = {{8, 8, 2}, {12, 12, 2},
                                             {12, 12, 3}, {16, 16, 3}};
  double density = 0.1;
  int corner = 3;
  int fov = 9;
  uint64_t seed = 1;
  int64_t buffer_capacity = 20000;
  int warmup = 500;            // transitions required before updates start
  int updates_per_episode = 4;
  double learning_rate = 1e-3;
  std::vector<int> hidden = {64, 64};
  int success_window = 200;    // rolling window for curriculum advancement
  double success_threshold = 0.9;
  bool mean_field_fov_only = false;     // restrict Eq.-style mean to FOV peers
  bool per_agent_pref_selection = false;
  bool double_q_select_online = false;
};

TrainingConfig load_training_config(const std::string& path);
std::string encode_training_config(const TrainingConfig& config);
TrainingConfig decode_training_config(const std::string& text);

// Builds the Q-network spec for a config: FOV features + relative summary +
// mean action + preference in, 2 x 5 values out.
NetworkSpec make_network_spec(int fov, const std::vector<int>& hidden);

Checkpoint init_checkpoint(const TrainingConfig& config);

using InstanceFactory =
    std::function<Instance(const CurriculumStage& stage, Rng& rng)>;

// Generates a fresh map and corner-mirrored formation scenario.
Instance default_instance_factory(const CurriculumStage& stage, double density,
                                  int corner, Rng& rng);

// Full training loop: per-episode preference sampling, Boltzmann rollouts,
// replay, envelope targets, homotopy loss, soft target updates, and
// curriculum advancement. Appends one CSV log row per episode to log_path
// (empty: no log).
Checkpoint train(const TrainingConfig& config, const std::string& log_path,
                 const InstanceFactory& factory = {});

}  // namespace maif
