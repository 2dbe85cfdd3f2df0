#include "maif/executor.hpp"

#include <chrono>
#include <cmath>

#include "maif/errors.hpp"
#include "maif/mean_field.hpp"
#include "maif/policy.hpp"
#include "maif/rng.hpp"

namespace maif {

EpisodeResult execute_policy(const Checkpoint& ckpt, const Instance& instance,
                             const Preference& pref,
                             const ExecuteOptions& options) {
  EnvConfig env_config = options.env;
  env_config.fov = ckpt.fov;
  if (ckpt.spec.input_size() != q_input_size(ckpt.fov))
    throw InvalidInputError("checkpoint spec does not match its FOV layout");

  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_time)
        .count();
  };

  Environment env(instance, env_config);
  const int m = env.num_agents();
  Rng rng(options.seed);

  auto apply_schedule = [&](int t) {
    for (const auto& change : options.schedule)
      if (change.t_threshold == t) env.set_desired_formation(change.goals);
  };

  EpisodeResult result;
  apply_schedule(0);
  result.deviation_per_t.push_back(env.current_deviation().total);

  ActionDist uniform{};
  uniform.fill(1.0 / kNumActions);
  std::vector<ActionDist> prev_mean(m, uniform);

  bool out_of_budget = false;
  while (!env.is_terminal()) {
    if (options.budget_ms > 0.0 && elapsed_ms() > options.budget_ms) {
      out_of_budget = true;
      break;
    }
    std::vector<Action> joint(m);
    std::vector<ActionDist> one_hots(m);
    for (int j = 0; j < m; ++j) {
      const Observation obs = env.observe(j);
      const QMatrix q = q_values(obs, prev_mean[j], pref, ckpt.spec, ckpt.theta);
      int action;
      if (options.greedy) {
        action = argmax_scalarized(q, pref);
      } else {
        action = sample_action(boltzmann_policy(q, pref, options.beta), rng);
      }
      joint[j] = static_cast<Action>(action);
      one_hots[j] = one_hot(joint[j]);
    }
    env.step(joint);
    apply_schedule(env.time());
    result.deviation_per_t.push_back(env.current_deviation().total);
    for (int j = 0; j < m; ++j) {
      if (options.mean_field_fov_only) {
        const int radius = env_config.fov / 2;
        std::vector<bool> mask(m);
        for (int k = 0; k < m; ++k)
          mask[k] = std::abs(env.positions()[k].x - env.positions()[j].x) <= radius &&
                    std::abs(env.positions()[k].y - env.positions()[j].y) <= radius;
        prev_mean[j] = mean_action_masked(one_hots, j, mask);
      } else {
        prev_mean[j] = mean_action(one_hots, j);
      }
    }
  }

  result.success = env.all_on_goal() && !out_of_budget;
  result.steps = env.time();
  const auto& history = env.history();
  result.solution.paths.assign(m, {});
  for (int j = 0; j < m; ++j) {
    result.solution.paths[j].reserve(history.size());
    for (const auto& snapshot : history)
      result.solution.paths[j].push_back(snapshot[j]);
  }
  long long dev_sum = 0;
  for (long long d : result.deviation_per_t) dev_sum += d;
  result.solution.value = {static_cast<double>(result.steps),
                           static_cast<double>(dev_sum) / static_cast<double>(m)};
  result.wall_ms = elapsed_ms();
  return result;
}

}  // namespace maif
