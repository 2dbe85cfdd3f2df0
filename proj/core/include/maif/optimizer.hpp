#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace maif {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> m;  // first-moment accumulator
  std::vector<double> v;  // second-moment accumulator
  int64_t step = 0;
};

AdamState make_adam(size_t num_params, AdamConfig config = {});

// Bias-corrected adaptive-moment update. Rejects non-finite gradients
// (NumericError) without touching parameters or state.
void optimizer_step(std::span<double> params, std::span<const double> grads,
                    AdamState& state);

// theta_bar <- alpha * theta + (1 - alpha) * theta_bar
void soft_update(std::span<const double> theta, std::span<double> theta_bar,
                 double alpha);

}  // namespace maif
