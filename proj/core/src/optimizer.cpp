#include "maif/optimizer.hpp"

#include <cmath>

#include "maif/errors.hpp"

namespace maif {

AdamState make_adam(size_t num_params, AdamConfig config) {
  AdamState state;
  state.config = config;
  state.m.assign(num_params, 0.0);
  state.v.assign(num_params, 0.0);
  return state;
}

void optimizer_step(std::span<double> params, std::span<const double> grads,
                    AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw InvalidInputError("parameter/gradient/state length mismatch");
  for (double g : grads)
    if (!std::isfinite(g))
      throw NumericError("non-finite gradient; update rejected");
  const AdamConfig& c = state.config;
  ++state.step;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grads[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

void soft_update(std::span<const double> theta, std::span<double> theta_bar,
                 double alpha) {
  if (theta.size() != theta_bar.size())
    throw InvalidInputError("parameter length mismatch");
  if (alpha < 0.0 || alpha > 1.0)
    throw InvalidInputError("alpha must lie in [0, 1]");
  for (size_t i = 0; i < theta.size(); ++i)
    theta_bar[i] = alpha * theta[i] + (1.0 - alpha) * theta_bar[i];
}

}  // namespace maif
