#pragma once

#include <cstdint>
#include <vector>

#include "maif/checkpoint.hpp"
#include "maif/environment.hpp"
#include "maif/instance.hpp"
#include "maif/solution.hpp"

namespace maif {

struct ExecuteOptions {
  bool greedy = true;
  double beta = 8.0;       // Boltzmann temperature when not greedy
  uint64_t seed = 0;       // sampling seed when not greedy
  EnvConfig env{};         // FOV is taken from the checkpoint
  std::vector<FormationChange> schedule;
  double budget_ms = 0.0;  // per-episode wall-clock budget; 0 = unlimited
  bool mean_field_fov_only = false;
};

struct EpisodeResult {
  Solution solution;  // executed paths (all of length steps) and their value
  bool success = false;
  int steps = 0;
  // F(t) for t = 0..steps, measured against the target active at time t.
  std::vector<long long> deviation_per_t;
  double wall_ms = 0.0;
};

// Rolls the checkpointed policy on the instance until the episode terminates;
// scheduled formation changes apply when the step counter reaches their
// threshold. A timed-out or over-budget episode is scored, not an error.
EpisodeResult execute_policy(const Checkpoint& ckpt, const Instance& instance,
                             const Preference& pref,
                             const ExecuteOptions& options = {});

}  // namespace maif
