#include "fortify/multirun_analysis.hpp"

#include <cmath>

#include "fortify/test_functions.hpp"

namespace fortify {

double independent_prediction(double p, std::size_t m) {
  if (m < 1) throw ConfigError("group size must be at least 1");
  return std::pow(p, static_cast<double>(m));
}

GroupFailures group_failures(const std::vector<bool>& outcomes, std::size_t m) {
  if (m < 1) throw ConfigError("group size must be at least 1");
  if (m > outcomes.size()) throw ConfigError("group size exceeds the number of runs");
  GroupFailures g;
  g.n_groups = outcomes.size() / m;
  for (std::size_t grp = 0; grp < g.n_groups; ++grp) {
    bool all_failed = true;
    for (std::size_t j = grp * m; j < (grp + 1) * m && all_failed; ++j) all_failed = outcomes[j];
    if (all_failed) ++g.failed_groups;
  }
  g.fraction = static_cast<double>(g.failed_groups) / static_cast<double>(g.n_groups);
  return g;
}

std::vector<MultiRunSummary> multirun_table(const std::vector<bool>& outcomes, double mean_evals,
                                            std::span<const std::size_t> m_values) {
  const double p = group_failures(outcomes, 1).fraction;
  std::vector<MultiRunSummary> rows;
  rows.reserve(m_values.size());
  for (std::size_t m : m_values) {
    const GroupFailures g = group_failures(outcomes, m);
    rows.push_back({m, g.n_groups, 100.0 * g.fraction, 100.0 * independent_prediction(p, m),
                    static_cast<double>(m) * mean_evals});
  }
  return rows;
}

}  // namespace fortify
