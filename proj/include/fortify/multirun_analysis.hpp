#pragma once
// Multiple-short-runs analysis: a group of m runs fails only if all m fail.

#include <cstddef>
#include <span>
#include <vector>

namespace fortify {

struct MultiRunSummary {
  std::size_t m = 1;
  std::size_t n_groups = 0;
  double observed_failure_percent = 0.0;
  double predicted_failure_percent = 0.0;  // 100 * p^m, p from the whole list
  double evals_per_group = 0.0;            // m * mean single-run evals
};

/// p^m, the all-fail probability of m independent runs.
double independent_prediction(double p, std::size_t m);

struct GroupFailures {
  std::size_t n_groups = 0;
  std::size_t failed_groups = 0;
  double fraction = 0.0;
};

/// Consecutive disjoint groups of m in run order; the remainder is dropped.
/// Throws ConfigError when m is zero or exceeds the number of outcomes.
GroupFailures group_failures(const std::vector<bool>& outcomes, std::size_t m);

/// One summary per m. Predictions use the single-run failure fraction of the
/// same list.
std::vector<MultiRunSummary> multirun_table(const std::vector<bool>& outcomes, double mean_evals,
                                            std::span<const std::size_t> m_values);

}  // namespace fortify
