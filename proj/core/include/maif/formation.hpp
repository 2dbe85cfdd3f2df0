#pragma once

#include <array>
#include <vector>

namespace maif {

// d-dimensional integer grid coordinate (d = 2 in the simulator, but the
// formation algebra accepts any d >= 1).
using Coord = std::vector<int>;

struct Formation {
  std::vector<Coord> positions;

  int num_agents() const { return static_cast<int>(positions.size()); }
  int dim() const {
    return positions.empty() ? 0 : static_cast<int>(positions[0].size());
  }
  friend bool operator==(const Formation&, const Formation&) = default;
};

struct DeviationResult {
  long long total = 0;                 // minimum total L1 alignment effort
  std::vector<long long> per_agent;    // per-agent share; sums to total
  Coord delta;                         // per-dimension median shift
};

struct BiObjectiveValue {
  double makespan = 0.0;
  double form_dev_avg = 0.0;
  friend bool operator==(const BiObjectiveValue&, const BiObjectiveValue&) = default;
};

struct Preference {
  double lambda = 0.5;  // in [0, 1)

  std::array<double, 2> weights() const { return {lambda, 1.0 - lambda}; }
};

// Lower median: for even counts, the lower of the two middle values, so the
// shift stays integral. Any value between the middle pair minimizes the L1
// sum, so minimality is unaffected.
int lower_median(std::vector<int> values);

// Minimum total L1 effort to align `current` with `desired` over all integer
// translations, via the per-dimension median of coordinate differences.
DeviationResult deviation(const Formation& current, const Formation& desired);

// Same result computed from pairwise relative positions only (anchored at any
// one agent; that agent's entries must be zero in both lists). O(d*M) plus
// median cost.
DeviationResult deviation_relative(const std::vector<Coord>& rel_current,
                                   const std::vector<Coord>& rel_desired);

// lambda * makespan + (1 - lambda) * form_dev_avg
double mix(const BiObjectiveValue& value, const Preference& pref);

// Componentwise <= (reflexive).
bool dominates(const BiObjectiveValue& a, const BiObjectiveValue& b);

// Inputs not strictly dominated by another input, deduplicated, sorted by
// makespan ascending.
std::vector<BiObjectiveValue> pareto_filter(std::vector<BiObjectiveValue> values);

// Sum over t = 0..T of the deviation between the held-path formation and
// `desired`; agents that arrive early wait at their final cell.
long long summed_deviation(const std::vector<std::vector<Coord>>& paths,
                           const Formation& desired);

// (makespan, average formation deviation per agent) of a set of paths.
BiObjectiveValue evaluate_solution(const std::vector<std::vector<Coord>>& paths,
                                   const Formation& desired);

}  // namespace maif
