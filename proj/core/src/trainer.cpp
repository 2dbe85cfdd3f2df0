#include "maif/trainer.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maif/envelope.hpp"
#include "maif/environment.hpp"
#include "maif/errors.hpp"
#include "maif/mean_field.hpp"
#include "maif/policy.hpp"
#include "maif/replay_buffer.hpp"
#include "maif/rng.hpp"

namespace maif {

namespace {

using nlohmann::json;

void validate_config(const TrainingConfig& c) {
  if (!(c.gamma > 0.0 && c.gamma < 1.0))
    throw InvalidInputError("gamma must lie in (0, 1)");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0))
    throw InvalidInputError("alpha must lie in (0, 1]");
  if (c.zeta_fraction < 0.0 || c.zeta_fraction > 1.0)
    throw InvalidInputError("zeta_fraction must lie in [0, 1]");
  if (c.batch_size < 1 || c.num_preferences < 1)
    throw InvalidInputError("batch_size and num_preferences must be positive");
  if (c.episodes < 0) throw InvalidInputError("episodes must be nonnegative");
  if (c.t_max < 1) throw InvalidInputError("t_max must be positive");
  if (!(c.pref_step > 0.0 && c.pref_step < 1.0))
    throw InvalidInputError("pref_step must lie in (0, 1)");
  if (c.curriculum.empty())
    throw InvalidInputError("curriculum needs at least one stage");
  if (c.hidden.empty())
    throw InvalidInputError("network needs at least one hidden layer");
}

int preference_levels(double step) {
  return static_cast<int>(std::floor((1.0 - 1e-9) / step)) + 1;
}

Preference sample_preference(double step, Rng& rng) {
  return {step * rng.uniform_int(preference_levels(step))};
}

double schedule_beta(const TrainingConfig& c, int64_t episode) {
  const double frac =
      c.episodes > 1
          ? static_cast<double>(episode) / static_cast<double>(c.episodes - 1)
          : 0.0;
  return c.beta_start + (c.beta_end - c.beta_start) * frac;
}

double schedule_zeta(const TrainingConfig& c, int64_t episode) {
  const double ramp = c.zeta_fraction * static_cast<double>(c.episodes);
  if (ramp <= 0.0) return 1.0;
  return std::min(1.0, static_cast<double>(episode) / ramp);
}

}  // namespace

NetworkSpec make_network_spec(int fov, const std::vector<int>& hidden) {
  NetworkSpec spec;
  int in = q_input_size(fov);
  for (int width : hidden) {
    spec.layers.push_back({in, width, Activation::Relu});
    in = width;
  }
  spec.layers.push_back({in, 2 * kNumActions, Activation::Identity});
  return spec;
}

Checkpoint init_checkpoint(const TrainingConfig& config) {
  validate_config(config);
  Checkpoint ckpt;
  ckpt.fov = config.fov;
  ckpt.spec = make_network_spec(config.fov, config.hidden);
  Rng rng(config.seed);
  ckpt.theta = init_params(ckpt.spec, rng);
  ckpt.theta_bar = ckpt.theta;
  ckpt.opt = make_adam(ckpt.theta.size(), {config.learning_rate});
  ckpt.rng_state = rng.save_state();
  return ckpt;
}

Instance default_instance_factory(const CurriculumStage& stage, double density,
                                  int corner, Rng& rng) {
  const GridMap map =
      generate_map(stage.width, stage.height, density, corner, rng.next());
  Rng scenario_rng(rng.next());
  const Scenario scenario =
      sample_scenario(map, corner, stage.agents, scenario_rng);
  return make_instance(map, scenario);
}

Checkpoint train(const TrainingConfig& config, const std::string& log_path,
                 const InstanceFactory& factory) {
  validate_config(config);
  Checkpoint ckpt = init_checkpoint(config);
  Rng rng;
  rng.load_state(ckpt.rng_state);

  const InstanceFactory make =
      factory ? factory : [&config](const CurriculumStage& stage, Rng& r) {
        return default_instance_factory(stage, config.density, config.corner, r);
      };

  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::binary);
    if (!log) throw InvalidInputError("cannot open training log: " + log_path);
    log << "# maif-trainlog/1\n"
        << "episode,stage,success,makespan,form_dev_avg,mix_0.5,loss,zeta,beta,wall_ms\n";
  }

  ReplayBuffer buffer(static_cast<size_t>(config.buffer_capacity));
  std::deque<int> window;  // rolling successes within the current stage
  int stage_index = 0;
  const ActionDist uniform_mean = [] {
    ActionDist u{};
    u.fill(1.0 / kNumActions);
    return u;
  }();

  for (int64_t episode = 0; episode < config.episodes; ++episode) {
    const auto episode_start = std::chrono::steady_clock::now();
    const CurriculumStage& stage = config.curriculum[stage_index];
    Instance instance;
    try {
      instance = make(stage, rng);
    } catch (const GenerationError& e) {
      throw GenerationError("curriculum stage " + std::to_string(stage_index) +
                            " (" + std::to_string(stage.width) + "x" +
                            std::to_string(stage.height) + ", " +
                            std::to_string(stage.agents) +
                            " agents) unsatisfiable: " + e.what());
    }
    Environment env(instance, {config.fov, config.t_max});
    const int m = env.num_agents();

    auto ctx = std::make_shared<EpisodeContext>();
    ctx->map = env.map();
    ctx->goals = env.goals();
    for (int j = 0; j < m; ++j) ctx->dist_fields.push_back(env.distance_field_for(j));
    ctx->fov = config.fov;

    const Preference omega = sample_preference(config.pref_step, rng);
    const double beta = schedule_beta(config, episode);
    const double zeta = schedule_zeta(config, episode);

    std::vector<ActionDist> prev_mean(m, uniform_mean);
    std::vector<StoredTransition> episode_records;

    while (!env.is_terminal()) {
      std::vector<Action> joint(m);
      std::vector<ActionDist> one_hots(m);
      const std::vector<Cell> before = env.positions();
      for (int j = 0; j < m; ++j) {
        const Observation obs = env.observe(j);
        const QMatrix q = q_values(obs, prev_mean[j], omega, ckpt.spec, ckpt.theta);
        const ActionDist dist = boltzmann_policy(q, omega, beta);
        joint[j] = static_cast<Action>(sample_action(dist, rng));
        one_hots[j] = one_hot(joint[j]);
      }
      const StepOutcome outcome = env.step(joint);
      ++ckpt.progress.env_steps;

      std::vector<ActionDist> cur_mean(m);
      std::vector<bool> mask(m, true);
      for (int j = 0; j < m; ++j) {
        if (config.mean_field_fov_only) {
          const int radius = config.fov / 2;
          const auto& pos = env.positions();
          for (int k = 0; k < m; ++k)
            mask[k] = std::abs(pos[k].x - pos[j].x) <= radius &&
                      std::abs(pos[k].y - pos[j].y) <= radius;
          cur_mean[j] = mean_action_masked(one_hots, j, mask);
        } else {
          cur_mean[j] = mean_action(one_hots, j);
        }
      }

      StoredTransition rec;
      rec.ctx = ctx;
      rec.positions = before;
      rec.next_positions = env.positions();
      rec.actions.resize(m);
      for (int j = 0; j < m; ++j) rec.actions[j] = static_cast<int>(joint[j]);
      rec.rewards = outcome.rewards;
      rec.mean_actions = cur_mean;
      rec.next_mean_actions.assign(m, uniform_mean);  // patched below
      episode_records.push_back(std::move(rec));
      prev_mean = cur_mean;
    }
    const bool success = env.all_on_goal();

    for (size_t t = 0; t + 1 < episode_records.size(); ++t)
      episode_records[t].next_mean_actions = episode_records[t + 1].mean_actions;
    if (!episode_records.empty()) episode_records.back().terminal = true;
    for (auto& rec : episode_records) buffer.push(std::move(rec));

    double episode_loss = 0.0;
    int updates_done = 0;
    for (int u = 0; u < config.updates_per_episode; ++u) {
      if (buffer.size() < static_cast<size_t>(config.warmup)) break;
      const auto stored = buffer.sample(config.batch_size, rng);
      std::vector<TransitionSample> batch;
      batch.reserve(stored.size());
      for (const auto& s : stored) batch.push_back(materialize(s));
      std::vector<Preference> prefs;
      for (int k = 0; k < config.num_preferences; ++k)
        prefs.push_back(sample_preference(config.pref_step, rng));
      const auto targets = envelope_target(
          batch, prefs, ckpt.spec, ckpt.theta_bar, config.gamma,
          config.double_q_select_online ? std::span<const double>(ckpt.theta)
                                        : std::span<const double>(),
          config.per_agent_pref_selection);
      const LossResult res = envelope_loss(batch, targets, prefs, ckpt.spec,
                                           ckpt.theta, zeta);
      optimizer_step(ckpt.theta, res.grad, ckpt.opt);
      ++ckpt.progress.updates;
      episode_loss += res.loss;
      ++updates_done;
    }
    soft_update(ckpt.theta, ckpt.theta_bar, config.alpha);
    ++ckpt.progress.episodes;

    window.push_back(success ? 1 : 0);
    while (static_cast<int>(window.size()) > config.success_window)
      window.pop_front();
    if (stage_index + 1 < static_cast<int>(config.curriculum.size()) &&
        static_cast<int>(window.size()) == config.success_window) {
      int wins = 0;
      for (int s : window) wins += s;
      if (static_cast<double>(wins) / config.success_window >
          config.success_threshold) {
        ++stage_index;
        window.clear();
      }
    }
    ckpt.progress.stage = stage_index;

    if (log) {
      long long dev_sum = 0;
      for (const auto& snapshot : env.history())
        dev_sum += deviation(to_formation(snapshot), env.goals()).total;
      const BiObjectiveValue value{
          static_cast<double>(env.time()),
          static_cast<double>(dev_sum) / static_cast<double>(m)};
      const double wall_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - episode_start)
              .count();
      std::ostringstream row;
      row.setf(std::ios::fmtflags(0), std::ios::floatfield);
      row.precision(10);
      row << episode << ',' << stage_index << ',' << (success ? 1 : 0) << ','
          << value.makespan << ',' << value.form_dev_avg << ','
          << mix(value, {0.5}) << ','
          << (updates_done > 0 ? episode_loss / updates_done : 0.0) << ','
          << zeta << ',' << beta << ',' << wall_ms << '\n';
      log << row.str();
    }
  }

  ckpt.rng_state = rng.save_state();
  return ckpt;
}

TrainingConfig decode_training_config(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw InvalidInputError("training config is not valid JSON");
  TrainingConfig c;
  c.gamma = j.value("gamma", c.gamma);
  c.beta_start = j.value("beta_start", c.beta_start);
  c.beta_end = j.value("beta_end", c.beta_end);
  c.zeta_fraction = j.value("zeta_fraction", c.zeta_fraction);
  c.alpha = j.value("alpha", c.alpha);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.num_preferences = j.value("num_preferences", c.num_preferences);
  c.episodes = j.value("episodes", c.episodes);
  c.t_max = j.value("t_max", c.t_max);
  c.pref_step = j.value("pref_step", c.pref_step);
  if (j.contains("curriculum")) {
    c.curriculum.clear();
    for (const auto& stage : j.at("curriculum"))
      c.curriculum.push_back({stage.at("width").get<int>(),
                              stage.at("height").get<int>(),
                              stage.at("agents").get<int>()});
  }
  c.density = j.value("density", c.density);
  c.corner = j.value("corner", c.corner);
  c.fov = j.value("fov", c.fov);
  c.seed = j.value("seed", c.seed);
  c.buffer_capacity = j.value("buffer_capacity", c.buffer_capacity);
  c.warmup = j.value("warmup", c.warmup);
  c.updates_per_episode = j.value("updates_per_episode", c.updates_per_episode);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  if (j.contains("hidden")) c.hidden = j.at("hidden").get<std::vector<int>>();
  c.success_window = j.value("success_window", c.success_window);
  c.success_threshold = j.value("success_threshold", c.success_threshold);
  c.mean_field_fov_only = j.value("mean_field_fov_only", c.mean_field_fov_only);
  c.per_agent_pref_selection =
      j.value("per_agent_pref_selection", c.per_agent_pref_selection);
  c.double_q_select_online =
      j.value("double_q_select_online", c.double_q_select_online);
  validate_config(c);
  return c;
}

std::string encode_training_config(const TrainingConfig& c) {
  json j;
  j["gamma"] = c.gamma;
  j["beta_start"] = c.beta_start;
  j["beta_end"] = c.beta_end;
  j["zeta_fraction"] = c.zeta_fraction;
  j["alpha"] = c.alpha;
  j["batch_size"] = c.batch_size;
  j["num_preferences"] = c.num_preferences;
  j["episodes"] = c.episodes;
  j["t_max"] = c.t_max;
  j["pref_step"] = c.pref_step;
  json stages = json::array();
  for (const auto& s : c.curriculum)
    stages.push_back({{"width", s.width}, {"height", s.height}, {"agents", s.agents}});
  j["curriculum"] = stages;
  j["density"] = c.density;
  j["corner"] = c.corner;
  j["fov"] = c.fov;
  j["seed"] = c.seed;
  j["buffer_capacity"] = c.buffer_capacity;
  j["warmup"] = c.warmup;
  j["updates_per_episode"] = c.updates_per_episode;
  j["learning_rate"] = c.learning_rate;
  j["hidden"] = c.hidden;
  j["success_window"] = c.success_window;
  j["success_threshold"] = c.success_threshold;
  j["mean_field_fov_only"] = c.mean_field_fov_only;
  j["per_agent_pref_selection"] = c.per_agent_pref_selection;
  j["double_q_select_online"] = c.double_q_select_online;
  return j.dump(2) + "\n";
}

TrainingConfig load_training_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open training config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_training_config(buf.str());
}

}  // namespace maif
