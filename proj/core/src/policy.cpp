#include "maif/policy.hpp"

#include <algorithm>
#include <cmath>

#include "maif/errors.hpp"
#include "maif/rng.hpp"

namespace maif {

int q_input_size(int fov, int dims) {
  return kObsChannels * fov * fov + 4 * dims + kNumActions + 2;
}

std::vector<double> assemble_q_input(const Observation& obs,
                                     const ActionDist& mean_act,
                                     const Preference& pref) {
  const int d = obs.rel_positions.empty()
                    ? 2
                    : static_cast<int>(obs.rel_positions[0].size());
  std::vector<double> input;
  input.reserve(q_input_size(obs.fov, d));
  input.insert(input.end(), obs.features.begin(), obs.features.end());

  // Residuals between live and desired relative geometry, centered on their
  // per-dimension median; summarizing to fixed statistics keeps the input
  // size independent of the agent count.
  const int m = static_cast<int>(obs.rel_positions.size());
  for (int j = 0; j < d; ++j) {
    std::vector<int> residual(m);
    for (int i = 0; i < m; ++i)
      residual[i] = obs.rel_positions[i][j] - obs.rel_goals[i][j];
    const int med = lower_median(residual);
    double mean = 0.0;
    double lo = residual[0] - med, hi = residual[0] - med;
    for (int i = 0; i < m; ++i) {
      const double c = residual[i] - med;
      mean += c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    mean /= m;
    const double own = residual[obs.agent] - med;
    input.push_back(mean / obs.norm);
    input.push_back(lo / obs.norm);
    input.push_back(hi / obs.norm);
    input.push_back(own / obs.norm);
  }
  input.insert(input.end(), mean_act.begin(), mean_act.end());
  const auto w = pref.weights();
  input.push_back(w[0]);
  input.push_back(w[1]);
  return input;
}

QMatrix q_values(const Observation& obs, const ActionDist& mean_act,
                 const Preference& pref, const NetworkSpec& spec,
                 std::span<const double> params) {
  const auto input = assemble_q_input(obs, mean_act, pref);
  const auto out = forward(spec, params, input);
  if (static_cast<int>(out.size()) != 2 * kNumActions)
    throw InvalidInputError("Q-network output must be 2 x 5");
  QMatrix q(kNumActions);
  q.v.assign(out.begin(), out.end());
  return q;
}

ActionDist boltzmann_policy(const QMatrix& q, const Preference& pref,
                            double beta) {
  if (q.num_actions != kNumActions)
    throw InvalidInputError("policy expects a 2 x 5 Q-matrix");
  if (beta < 0.0) throw InvalidInputError("beta must be nonnegative");
  const auto w = pref.weights();
  std::array<double, kNumActions> scal;
  for (int a = 0; a < kNumActions; ++a) {
    scal[a] = q.scalarized(a, w);
    if (!std::isfinite(scal[a]))
      throw NumericError("non-finite Q-value in policy");
  }
  const double top = *std::max_element(scal.begin(), scal.end());
  ActionDist p{};
  double z = 0.0;
  for (int a = 0; a < kNumActions; ++a) {
    p[a] = std::exp(beta * (scal[a] - top));
    z += p[a];
  }
  for (int a = 0; a < kNumActions; ++a) p[a] /= z;
  return p;
}

int argmax_scalarized(const QMatrix& q, const Preference& pref) {
  const auto w = pref.weights();
  int best = 0;
  double best_v = q.scalarized(0, w);
  for (int a = 1; a < q.num_actions; ++a) {
    const double v = q.scalarized(a, w);
    if (v > best_v) {
      best_v = v;
      best = a;
    }
  }
  return best;
}

int sample_action(const ActionDist& dist, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int a = 0; a < kNumActions; ++a) {
    acc += dist[a];
    if (u < acc) return a;
  }
  return kNumActions - 1;
}

}  // namespace maif
