#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maif/network.hpp"
#include "maif/optimizer.hpp"

namespace maif {

struct TrainProgress {
  int64_t episodes = 0;
  int64_t updates = 0;
  int64_t env_steps = 0;
  int32_t stage = 0;
  friend bool operator==(const TrainProgress&, const TrainProgress&) = default;
};

// Versioned binary container; save -> load -> save is byte-identical.
struct Checkpoint {
  NetworkSpec spec;
  int32_t fov = 9;  // FOV the input layout was built for
  std::vector<double> theta;
  std::vector<double> theta_bar;
  AdamState opt;
  std::string rng_state;
  TrainProgress progress;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace maif
