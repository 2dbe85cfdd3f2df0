#include "maif/mean_field.hpp"

#include "maif/errors.hpp"

namespace maif {

namespace {

void check_one_hot(const ActionDist& a) {
  int ones = 0;
  for (double v : a) {
    if (v == 1.0)
      ++ones;
    else if (v != 0.0)
      throw InvalidInputError("action vectors must be one-hot");
  }
  if (ones != 1) throw InvalidInputError("action vectors must be one-hot");
}

}  // namespace

ActionDist mean_action(const std::vector<ActionDist>& prev_actions,
                       int self_index) {
  std::vector<bool> mask(prev_actions.size(), true);
  return mean_action_masked(prev_actions, self_index, mask);
}

ActionDist mean_action_masked(const std::vector<ActionDist>& prev_actions,
                              int self_index,
                              const std::vector<bool>& neighbor_mask) {
  const int m = static_cast<int>(prev_actions.size());
  if (m < 1) throw InvalidInputError("need at least one agent");
  if (self_index < 0 || self_index >= m)
    throw InvalidInputError("self index out of range");
  if (static_cast<int>(neighbor_mask.size()) != m)
    throw InvalidInputError("neighbor mask length mismatch");
  for (const auto& a : prev_actions) check_one_hot(a);

  ActionDist mean{};
  int count = 0;
  for (int j = 0; j < m; ++j) {
    if (j == self_index || !neighbor_mask[j]) continue;
    for (int a = 0; a < kNumActions; ++a) mean[a] += prev_actions[j][a];
    ++count;
  }
  if (count == 0) {
    mean.fill(1.0 / kNumActions);
    return mean;
  }
  for (int a = 0; a < kNumActions; ++a) mean[a] /= count;
  return mean;
}

}  // namespace maif
