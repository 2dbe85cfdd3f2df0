#include "maif/replay_buffer.hpp"

#include "maif/errors.hpp"
#include "maif/rng.hpp"

namespace maif {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity < 1) throw InvalidInputError("replay capacity must be positive");
}

void ReplayBuffer::push(StoredTransition transition) {
  std::lock_guard<std::mutex> lock(mutex_);
  data_.push_back(std::move(transition));
  while (data_.size() > capacity_) data_.pop_front();
}

size_t ReplayBuffer::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return data_.size();
}

std::vector<StoredTransition> ReplayBuffer::sample(size_t n, Rng& rng) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (data_.empty()) throw InvalidInputError("sampling from an empty buffer");
  std::vector<StoredTransition> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i)
    out.push_back(data_[rng.uniform_int(static_cast<int>(data_.size()))]);
  return out;
}

TransitionSample materialize(const StoredTransition& stored) {
  const EpisodeContext& ctx = *stored.ctx;
  const int m = static_cast<int>(stored.positions.size());
  TransitionSample sample;
  sample.terminal = stored.terminal;
  sample.agents.resize(m);
  for (int j = 0; j < m; ++j) {
    AgentSample& agent = sample.agents[j];
    agent.obs = Environment::make_observation(ctx.map, ctx.dist_fields,
                                              stored.positions, ctx.goals, j,
                                              ctx.fov);
    agent.next_obs = Environment::make_observation(ctx.map, ctx.dist_fields,
                                                   stored.next_positions,
                                                   ctx.goals, j, ctx.fov);
    agent.action = stored.actions[j];
    agent.reward = stored.rewards[j];
    agent.mean_act = stored.mean_actions[j];
    agent.next_mean_act = stored.next_mean_actions[j];
  }
  return sample;
}

}  // namespace maif
