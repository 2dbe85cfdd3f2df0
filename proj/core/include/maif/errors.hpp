#pragma once

#include <stdexcept>
#include <string>

namespace maif {

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Prioritized planning could not route one agent within the horizon.
struct NoPathError : PlanningError {
  int agent;
  NoPathError(int agent_index, const std::string& what)
      : PlanningError(what), agent(agent_index) {}
};

// Joint-state search guard: instance too large for the joint state space.
struct FeasibilityError : PlanningError {
  using PlanningError::PlanningError;
};

// Joint-state search exhausted its horizon without reaching the goal state.
struct NoSolutionError : PlanningError {
  using PlanningError::PlanningError;
};

}  // namespace maif
