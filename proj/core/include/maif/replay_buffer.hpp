#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "maif/envelope.hpp"
#include "maif/environment.hpp"

namespace maif {

class Rng;

// Per-episode data shared by that episode's transitions; observations are
// rebuilt from it on sampling instead of being stored densely.
struct EpisodeContext {
  GridMap map;
  Formation goals;
  std::vector<std::vector<int>> dist_fields;
  int fov = 9;
};

struct StoredTransition {
  std::shared_ptr<const EpisodeContext> ctx;
  std::vector<Cell> positions;
  std::vector<Cell> next_positions;
  std::vector<int> actions;
  std::vector<Vec2d> rewards;
  std::vector<ActionDist> mean_actions;
  std::vector<ActionDist> next_mean_actions;
  bool terminal = false;
};

// Bounded FIFO with uniform sampling; push and sample lock the same mutex so
// concurrent rollout writers and one learner stay consistent.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);

  void push(StoredTransition transition);
  size_t size() const;
  size_t capacity() const { return capacity_; }
  std::vector<StoredTransition> sample(size_t n, Rng& rng) const;

 private:
  size_t capacity_;
  std::deque<StoredTransition> data_;
  mutable std::mutex mutex_;
};

// Rebuilds the full per-agent observations of a stored transition.
TransitionSample materialize(const StoredTransition& stored);

}  // namespace maif
