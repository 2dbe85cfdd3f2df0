#pragma once

#include <array>
#include <span>
#include <vector>

#include "maif/environment.hpp"
#include "maif/formation.hpp"
#include "maif/network.hpp"
#include "maif/policy.hpp"

namespace maif {

using Vec2d = std::array<double, 2>;

struct AgentSample {
  Observation obs;
  Observation next_obs;
  int action = 0;
  Vec2d reward{};
  ActionDist mean_act{};
  ActionDist next_mean_act{};
};

// One replayed joint step: all agents of one timestep share the target.
struct TransitionSample {
  std::vector<AgentSample> agents;
  bool terminal = false;
};

struct EnvelopeChoice {
  Vec2d value{};                  // un-scalarized sum over agents
  int pref_index = -1;            // shared candidate (-1 in per-agent mode)
  std::vector<int> pref_indices;  // per-agent candidate preference
  std::vector<int> actions;       // chosen per-agent actions
};

// Scalarized maximization over (candidate preference, per-agent actions)
// under `omega`; q[w][j] is agent j's Q-matrix conditioned on candidate w.
// With per_agent_pref, each agent picks its own candidate preference.
EnvelopeChoice envelope_select(const std::vector<std::vector<QMatrix>>& q,
                               const Vec2d& omega, bool per_agent_pref = false);

// TD targets y for every (transition, preference) pair, flattened as
// [n * num_prefs + k]. Bootstrap values come from theta_bar; when
// select_params is nonempty the (preference, action) choice is made with it
// instead (classical double-Q selection).
std::vector<Vec2d> envelope_target(const std::vector<TransitionSample>& batch,
                                   const std::vector<Preference>& sampled_prefs,
                                   const NetworkSpec& spec,
                                   std::span<const double> theta_bar,
                                   double gamma,
                                   std::span<const double> select_params = {},
                                   bool per_agent_pref = false);

struct LossResult {
  double loss = 0.0;
  double loss_a = 0.0;  // mean squared multi-objective TD
  double loss_b = 0.0;  // mean absolute projected TD
  std::vector<double> grad;
};

// Homotopy loss (1 - zeta) * L_A + zeta * L_B over the same (transition,
// preference) pairing; targets are treated as constants.
LossResult envelope_loss(const std::vector<TransitionSample>& batch,
                         const std::vector<Vec2d>& targets,
                         const std::vector<Preference>& sampled_prefs,
                         const NetworkSpec& spec, std::span<const double> theta,
                         double zeta);

}  // namespace maif
