#pragma once

#include <span>
#include <vector>

#include "maif/environment.hpp"
#include "maif/network.hpp"

namespace maif {

class Rng;

// 2 x num_actions value matrix, row-major: row 0 moving-cost objective,
// row 1 formation objective.
struct QMatrix {
  int num_actions = 0;
  std::vector<double> v;

  explicit QMatrix(int actions = 0)
      : num_actions(actions), v(static_cast<size_t>(2) * actions, 0.0) {}
  double& at(int objective, int action) {
    return v[static_cast<size_t>(objective) * num_actions + action];
  }
  double at(int objective, int action) const {
    return v[static_cast<size_t>(objective) * num_actions + action];
  }
  double scalarized(int action, const std::array<double, 2>& w) const {
    return w[0] * at(0, action) + w[1] * at(1, action);
  }
};

// Q-network input layout: FOV feature channels, then per-dimension
// median-centered relative-residual statistics (mean, min, max, own), then
// the mean action, then the preference weights.
int q_input_size(int fov, int dims = 2);

std::vector<double> assemble_q_input(const Observation& obs,
                                     const ActionDist& mean_act,
                                     const Preference& pref);

QMatrix q_values(const Observation& obs, const ActionDist& mean_act,
                 const Preference& pref, const NetworkSpec& spec,
                 std::span<const double> params);

// Softmax over beta * w^T Q(., a) with max subtraction.
ActionDist boltzmann_policy(const QMatrix& q, const Preference& pref,
                            double beta);

int argmax_scalarized(const QMatrix& q, const Preference& pref);

int sample_action(const ActionDist& dist, Rng& rng);

}  // namespace maif
