#pragma once
// Replicate runs, success classification and failure-probability statistics.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fortify/de_optimizer.hpp"
#include "fortify/test_functions.hpp"

namespace fortify {

struct SuccessCriterion {
  double value_tolerance = 0.01;
  double near_radius = 1.0;
  double target_value = 0.0;

  void validate() const;
};

struct Classification {
  bool success = false;
  std::optional<int> nearest_label;
};

/// Success iff best_f - target_value <= value_tolerance. The nearest optimum
/// (ties to the lowest label) is reported only within near_radius.
Classification classify_run(const RunRecord& record, std::span<const KnownOptimum> optima,
                            const SuccessCriterion& criterion);

struct ReplicateSummary {
  std::size_t n_runs = 0;
  std::size_t n_failures = 0;
  double failure_percent = 0.0;
  std::vector<double> per_optimum_percent;  // aligned with the optima list
  double mean_total_evals = 0.0;
  double mean_de_evals = 0.0;
  double mean_polish_evals = 0.0;
  std::vector<bool> outcome_bits;  // true = failure, in run order
};

/// Builds a fresh objective (own counter) for every run.
using ObjectiveFactory = std::function<ObjectiveFunction()>;

/// Runs n replicates. Run i uses seed derive_seed(master_seed, i); results are
/// aggregated in run order and do not depend on the worker count.
ReplicateSummary run_replicates(const ObjectiveFactory& factory,
                                std::span<const KnownOptimum> optima, const DEConfig& config,
                                const SuccessCriterion& criterion, std::size_t n,
                                std::uint64_t master_seed, unsigned workers = 1);

/// Failure-count spread in the form p*sqrt(p*n*(1-p)).
double sigma_fail(double p, std::size_t n);

/// Textbook binomial standard deviation of the failure count, sqrt(n*p*(1-p)).
double binomial_count_sd(double p, std::size_t n);

/// Standard error of an estimated proportion, sqrt(p*(1-p)/n).
double binomial_proportion_se(double p, std::size_t n);

/// ceil(p^3 (1-p) / accuracy^2): runs needed so that sigma_fail = accuracy*n.
std::size_t required_runs(double p, double accuracy);

struct BumpHitProbability {
  double p_single = 0.0;  // one uniform point lands in the support ball
  double p_none = 0.0;    // no member of the population does
};

/// Volume ratio of the radius-1/epsilon ball to the box, and the chance that
/// `population_count` independent uniform points all miss it. When a center
/// is given the ball must fit inside the box around it; otherwise its
/// diameter must fit along every axis.
BumpHitProbability bump_hit_probability(std::size_t population_count, std::size_t dim,
                                        double epsilon, const BoxDomain& domain,
                                        std::optional<std::span<const double>> center = {});

/// '1' = failure, '0' = success, one character per run.
std::string format_outcome_bits(const std::vector<bool>& bits);
/// Parses a '0'/'1' line, ignoring surrounding whitespace. Throws ConfigError
/// on any other character.
std::vector<bool> parse_outcome_bits(std::string_view line);

}  // namespace fortify
