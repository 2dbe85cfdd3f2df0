#include "maif/envelope.hpp"

#include <cmath>

#include "maif/errors.hpp"

namespace maif {

namespace {

int argmax_under(const QMatrix& q, const Vec2d& w) {
  int best = 0;
  double best_v = w[0] * q.at(0, 0) + w[1] * q.at(1, 0);
  for (int a = 1; a < q.num_actions; ++a) {
    const double v = w[0] * q.at(0, a) + w[1] * q.at(1, a);
    if (v > best_v) {
      best_v = v;
      best = a;
    }
  }
  return best;
}

}  // namespace

EnvelopeChoice envelope_select(const std::vector<std::vector<QMatrix>>& q,
                               const Vec2d& omega, bool per_agent_pref) {
  if (q.empty() || q[0].empty())
    throw InvalidInputError("envelope selection needs candidates and agents");
  const int num_prefs = static_cast<int>(q.size());
  const int m = static_cast<int>(q[0].size());
  EnvelopeChoice choice;
  choice.actions.assign(m, 0);
  choice.pref_indices.assign(m, 0);

  if (per_agent_pref) {
    // Each agent maximizes over its own (candidate, action) grid.
    for (int j = 0; j < m; ++j) {
      double best_v = 0.0;
      int best_w = -1, best_a = 0;
      for (int w = 0; w < num_prefs; ++w) {
        const int a = argmax_under(q[w][j], omega);
        const double v = omega[0] * q[w][j].at(0, a) + omega[1] * q[w][j].at(1, a);
        if (best_w < 0 || v > best_v) {
          best_v = v;
          best_w = w;
          best_a = a;
        }
      }
      choice.value[0] += q[best_w][j].at(0, best_a);
      choice.value[1] += q[best_w][j].at(1, best_a);
      choice.actions[j] = best_a;
      choice.pref_indices[j] = best_w;
    }
    choice.pref_index = -1;
    return choice;
  }

  double best_total = 0.0;
  for (int w = 0; w < num_prefs; ++w) {
    Vec2d total{};
    std::vector<int> actions(m);
    for (int j = 0; j < m; ++j) {
      actions[j] = argmax_under(q[w][j], omega);
      total[0] += q[w][j].at(0, actions[j]);
      total[1] += q[w][j].at(1, actions[j]);
    }
    const double scal = omega[0] * total[0] + omega[1] * total[1];
    if (choice.pref_index < 0 || scal > best_total) {
      best_total = scal;
      choice.pref_index = w;
      choice.value = total;
      choice.actions = std::move(actions);
    }
  }
  choice.pref_indices.assign(m, choice.pref_index);
  return choice;
}

std::vector<Vec2d> envelope_target(const std::vector<TransitionSample>& batch,
                                   const std::vector<Preference>& sampled_prefs,
                                   const NetworkSpec& spec,
                                   std::span<const double> theta_bar,
                                   double gamma,
                                   std::span<const double> select_params,
                                   bool per_agent_pref) {
  if (sampled_prefs.empty())
    throw InvalidInputError("envelope target needs at least one preference");
  const int num_prefs = static_cast<int>(sampled_prefs.size());
  std::vector<Vec2d> targets(batch.size() * sampled_prefs.size());

  for (size_t n = 0; n < batch.size(); ++n) {
    const TransitionSample& tr = batch[n];
    const int m = static_cast<int>(tr.agents.size());
    Vec2d reward_sum{};
    for (const auto& agent : tr.agents) {
      reward_sum[0] += agent.reward[0];
      reward_sum[1] += agent.reward[1];
    }
    std::vector<std::vector<QMatrix>> q_bar;
    std::vector<std::vector<QMatrix>> q_sel;
    if (!tr.terminal) {
      q_bar.assign(num_prefs, std::vector<QMatrix>(m));
      if (!select_params.empty())
        q_sel.assign(num_prefs, std::vector<QMatrix>(m));
      for (int w = 0; w < num_prefs; ++w) {
        for (int j = 0; j < m; ++j) {
          q_bar[w][j] = q_values(tr.agents[j].next_obs,
                                 tr.agents[j].next_mean_act, sampled_prefs[w],
                                 spec, theta_bar);
          if (!select_params.empty())
            q_sel[w][j] = q_values(tr.agents[j].next_obs,
                                   tr.agents[j].next_mean_act, sampled_prefs[w],
                                   spec, select_params);
        }
      }
    }
    for (int k = 0; k < num_prefs; ++k) {
      Vec2d y = reward_sum;
      if (!tr.terminal) {
        const Vec2d omega = {sampled_prefs[k].lambda,
                             1.0 - sampled_prefs[k].lambda};
        Vec2d boot;
        if (select_params.empty()) {
          boot = envelope_select(q_bar, omega, per_agent_pref).value;
        } else {
          // Choose (preference, actions) with the online network, evaluate
          // the chosen entries with the target network.
          const EnvelopeChoice pick = envelope_select(q_sel, omega, per_agent_pref);
          boot = {0.0, 0.0};
          for (int j = 0; j < m; ++j) {
            const int w = pick.pref_indices[j];
            boot[0] += q_bar[w][j].at(0, pick.actions[j]);
            boot[1] += q_bar[w][j].at(1, pick.actions[j]);
          }
        }
        y[0] += gamma * boot[0];
        y[1] += gamma * boot[1];
      }
      targets[n * num_prefs + k] = y;
    }
  }
  return targets;
}

LossResult envelope_loss(const std::vector<TransitionSample>& batch,
                         const std::vector<Vec2d>& targets,
                         const std::vector<Preference>& sampled_prefs,
                         const NetworkSpec& spec, std::span<const double> theta,
                         double zeta) {
  if (zeta < 0.0 || zeta > 1.0)
    throw InvalidInputError("zeta must lie in [0, 1]");
  if (sampled_prefs.empty())
    throw InvalidInputError("loss needs at least one preference");
  if (targets.size() != batch.size() * sampled_prefs.size())
    throw InvalidInputError("target count mismatch");

  const int num_prefs = static_cast<int>(sampled_prefs.size());
  const double inv_count =
      1.0 / (static_cast<double>(batch.size()) * num_prefs);
  LossResult result;
  result.grad.assign(theta.size(), 0.0);

  std::vector<double> upstream(2 * kNumActions, 0.0);
  for (size_t n = 0; n < batch.size(); ++n) {
    const TransitionSample& tr = batch[n];
    for (int k = 0; k < num_prefs; ++k) {
      const Preference& pref = sampled_prefs[k];
      const Vec2d omega = {pref.lambda, 1.0 - pref.lambda};
      Vec2d q_sum{};
      std::vector<ForwardCache> caches(tr.agents.size());
      std::vector<std::vector<double>> outs(tr.agents.size());
      for (size_t j = 0; j < tr.agents.size(); ++j) {
        const auto input = assemble_q_input(tr.agents[j].obs,
                                            tr.agents[j].mean_act, pref);
        outs[j] = forward(spec, theta, input, &caches[j]);
        q_sum[0] += outs[j][tr.agents[j].action];
        q_sum[1] += outs[j][kNumActions + tr.agents[j].action];
      }
      const Vec2d& y = targets[n * num_prefs + k];
      const Vec2d e = {y[0] - q_sum[0], y[1] - q_sum[1]};
      const double proj = omega[0] * e[0] + omega[1] * e[1];
      result.loss_a += (e[0] * e[0] + e[1] * e[1]) * inv_count;
      result.loss_b += std::abs(proj) * inv_count;

      // d/dQ of the per-pair loss; gradients flow only through Q_theta.
      const double sgn = proj > 0.0 ? 1.0 : (proj < 0.0 ? -1.0 : 0.0);
      const Vec2d dq = {
          inv_count * ((1.0 - zeta) * 2.0 * e[0] + zeta * sgn * omega[0]),
          inv_count * ((1.0 - zeta) * 2.0 * e[1] + zeta * sgn * omega[1])};
      for (size_t j = 0; j < tr.agents.size(); ++j) {
        std::fill(upstream.begin(), upstream.end(), 0.0);
        upstream[tr.agents[j].action] = -dq[0];
        upstream[kNumActions + tr.agents[j].action] = -dq[1];
        backward_accumulate(spec, theta, caches[j], upstream, result.grad);
      }
    }
  }
  result.loss = (1.0 - zeta) * result.loss_a + zeta * result.loss_b;
  return result;
}

}  // namespace maif
