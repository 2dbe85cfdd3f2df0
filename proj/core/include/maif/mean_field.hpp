#pragma once

#include <vector>

#include "maif/environment.hpp"

namespace maif {

// Average of the other agents' previous one-hot actions; a lone agent gets
// the uniform vector.
ActionDist mean_action(const std::vector<ActionDist>& prev_actions,
                       int self_index);

// FOV-restricted variant: only agents with neighbor_mask[j] set count; an
// empty neighbor set falls back to uniform.
ActionDist mean_action_masked(const std::vector<ActionDist>& prev_actions,
                              int self_index,
                              const std::vector<bool>& neighbor_mask);

}  // namespace maif
