#include "maif/formation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "maif/errors.hpp"

namespace maif {

namespace {

void check_pair(const Formation& a, const Formation& b) {
  if (a.num_agents() < 1 || b.num_agents() < 1)
    throw InvalidInputError("formation needs at least one agent");
  if (a.num_agents() != b.num_agents())
    throw InvalidInputError("formations differ in agent count");
  const int d = a.dim();
  if (d < 1) throw InvalidInputError("formation dimension must be >= 1");
  for (const auto& p : a.positions)
    if (static_cast<int>(p.size()) != d)
      throw InvalidInputError("inconsistent coordinate dimension");
  for (const auto& p : b.positions)
    if (static_cast<int>(p.size()) != d)
      throw InvalidInputError("formations differ in coordinate dimension");
}

DeviationResult deviation_of_diffs(const std::vector<Coord>& diffs) {
  const int m = static_cast<int>(diffs.size());
  const int d = static_cast<int>(diffs[0].size());
  DeviationResult res;
  res.delta.resize(d);
  std::vector<int> column(m);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < m; ++i) column[i] = diffs[i][j];
    res.delta[j] = lower_median(column);
  }
  res.per_agent.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j)
      res.per_agent[i] += std::llabs(static_cast<long long>(diffs[i][j]) - res.delta[j]);
    res.total += res.per_agent[i];
  }
  return res;
}

}  // namespace

int lower_median(std::vector<int> values) {
  if (values.empty()) throw InvalidInputError("median of empty set");
  auto mid = values.begin() + (values.size() - 1) / 2;
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

DeviationResult deviation(const Formation& current, const Formation& desired) {
  check_pair(current, desired);
  const int m = current.num_agents();
  const int d = current.dim();
  std::vector<Coord> diffs(m, Coord(d));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j)
      diffs[i][j] = current.positions[i][j] - desired.positions[i][j];
  return deviation_of_diffs(diffs);
}

DeviationResult deviation_relative(const std::vector<Coord>& rel_current,
                                   const std::vector<Coord>& rel_desired) {
  if (rel_current.empty() || rel_current.size() != rel_desired.size())
    throw InvalidInputError("relative position lists must be nonempty and equal-sized");
  const int m = static_cast<int>(rel_current.size());
  const int d = static_cast<int>(rel_current[0].size());
  if (d < 1) throw InvalidInputError("coordinate dimension must be >= 1");
  auto is_zero = [](const Coord& c) {
    return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
  };
  bool anchored = false;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rel_current[i].size()) != d ||
        static_cast<int>(rel_desired[i].size()) != d)
      throw InvalidInputError("inconsistent coordinate dimension");
    if (is_zero(rel_current[i]) && is_zero(rel_desired[i])) anchored = true;
  }
  if (!anchored)
    throw InvalidInputError("self-relative entry must be zero in both lists");
  std::vector<Coord> diffs(m, Coord(d));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j)
      diffs[i][j] = rel_current[i][j] - rel_desired[i][j];
  return deviation_of_diffs(diffs);
}

double mix(const BiObjectiveValue& value, const Preference& pref) {
  if (!(pref.lambda >= 0.0 && pref.lambda < 1.0))
    throw InvalidInputError("preference lambda must lie in [0, 1)");
  if (value.makespan < 0.0 || value.form_dev_avg < 0.0)
    throw InvalidInputError("objective values must be nonnegative");
  return pref.lambda * value.makespan + (1.0 - pref.lambda) * value.form_dev_avg;
}

bool dominates(const BiObjectiveValue& a, const BiObjectiveValue& b) {
  return a.makespan <= b.makespan && a.form_dev_avg <= b.form_dev_avg;
}

std::vector<BiObjectiveValue> pareto_filter(std::vector<BiObjectiveValue> values) {
  std::vector<BiObjectiveValue> out;
  for (const auto& a : values) {
    bool strictly_dominated = false;
    for (const auto& b : values) {
      if (dominates(b, a) && !(b == a)) {
        strictly_dominated = true;
        break;
      }
    }
    if (!strictly_dominated &&
        std::find(out.begin(), out.end(), a) == out.end())
      out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.makespan != b.makespan ? a.makespan < b.makespan
                                    : a.form_dev_avg < b.form_dev_avg;
  });
  return out;
}

long long summed_deviation(const std::vector<std::vector<Coord>>& paths,
                           const Formation& desired) {
  if (paths.empty()) throw InvalidInputError("no paths given");
  const int m = static_cast<int>(paths.size());
  if (m != desired.num_agents())
    throw InvalidInputError("path count differs from desired formation size");
  int makespan = 0;
  for (const auto& p : paths) {
    if (p.empty()) throw InvalidInputError("each path needs a start position");
    makespan = std::max(makespan, static_cast<int>(p.size()) - 1);
  }
  long long sum = 0;
  Formation at_t;
  at_t.positions.resize(m);
  for (int t = 0; t <= makespan; ++t) {
    for (int i = 0; i < m; ++i) {
      const auto& p = paths[i];
      at_t.positions[i] = p[std::min<size_t>(t, p.size() - 1)];
    }
    sum += deviation(at_t, desired).total;
  }
  return sum;
}

BiObjectiveValue evaluate_solution(const std::vector<std::vector<Coord>>& paths,
                                   const Formation& desired) {
  const long long sum = summed_deviation(paths, desired);
  int makespan = 0;
  for (const auto& p : paths)
    makespan = std::max(makespan, static_cast<int>(p.size()) - 1);
  return {static_cast<double>(makespan),
          static_cast<double>(sum) / static_cast<double>(paths.size())};
}

}  // namespace maif
