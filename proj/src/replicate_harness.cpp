#include "fortify/replicate_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace fortify {

void SuccessCriterion::validate() const {
  if (!(value_tolerance > 0.0)) throw ConfigError("value tolerance must be positive");
  if (!(near_radius > 0.0)) throw ConfigError("near radius must be positive");
}

Classification classify_run(const RunRecord& record, std::span<const KnownOptimum> optima,
                            const SuccessCriterion& criterion) {
  Classification c;
  c.success = record.best_f - criterion.target_value <= criterion.value_tolerance;
  double best_distance = 0.0;
  std::optional<int> best_label;
  for (const auto& o : optima) {
    const double dist = euclidean_distance(record.best_x, o.location);
    if (!best_label || dist < best_distance || (dist == best_distance && o.label < *best_label)) {
      best_distance = dist;
      best_label = o.label;
    }
  }
  if (best_label && best_distance <= criterion.near_radius) c.nearest_label = best_label;
  return c;
}

namespace {

struct RunOutcome {
  bool failure = false;
  std::optional<int> nearest_label;
  std::uint64_t de_evals = 0;
  std::uint64_t polish_evals = 0;
  std::uint64_t total_evals = 0;
};

}  // namespace

ReplicateSummary run_replicates(const ObjectiveFactory& factory,
                                std::span<const KnownOptimum> optima, const DEConfig& config,
                                const SuccessCriterion& criterion, std::size_t n,
                                std::uint64_t master_seed, unsigned workers) {
  if (n < 1) throw ConfigError("at least one run is required");
  if (optima.empty()) throw ConfigError("classification needs at least one optimum");
  criterion.validate();
  {
    const ObjectiveFunction probe = factory();
    config.validate(probe.dim());
  }

  std::vector<RunOutcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) {
        ObjectiveFunction objective = factory();
        DEConfig run_config = config;
        run_config.seed = derive_seed(master_seed, i);
        const RunRecord record = de_minimize(objective, run_config);
        const Classification cls = classify_run(record, optima, criterion);
        outcomes[i] = {!cls.success, cls.nearest_label, record.de_evals, record.polish_evals,
                       record.total_evals};
      }
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };

  const unsigned n_workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(n, 1024)));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  ReplicateSummary summary;
  summary.n_runs = n;
  summary.outcome_bits.reserve(n);
  std::vector<std::size_t> near_counts(optima.size(), 0);
  std::uint64_t de_sum = 0;
  std::uint64_t polish_sum = 0;
  std::uint64_t total_sum = 0;
  for (const auto& o : outcomes) {
    summary.outcome_bits.push_back(o.failure);
    if (o.failure) ++summary.n_failures;
    if (o.nearest_label) {
      for (std::size_t j = 0; j < optima.size(); ++j) {
        if (optima[j].label == *o.nearest_label) ++near_counts[j];
      }
    }
    de_sum += o.de_evals;
    polish_sum += o.polish_evals;
    total_sum += o.total_evals;
  }
  const double runs = static_cast<double>(n);
  summary.failure_percent = 100.0 * static_cast<double>(summary.n_failures) / runs;
  for (std::size_t c : near_counts) {
    summary.per_optimum_percent.push_back(100.0 * static_cast<double>(c) / runs);
  }
  summary.mean_de_evals = static_cast<double>(de_sum) / runs;
  summary.mean_polish_evals = static_cast<double>(polish_sum) / runs;
  summary.mean_total_evals = static_cast<double>(total_sum) / runs;
  return summary;
}

double sigma_fail(double p, std::size_t n) {
  return p * std::sqrt(p * static_cast<double>(n) * (1.0 - p));
}

double binomial_count_sd(double p, std::size_t n) {
  return std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

double binomial_proportion_se(double p, std::size_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::size_t required_runs(double p, double accuracy) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie strictly between 0 and 1");
  if (!(accuracy > 0.0)) throw ConfigError("accuracy must be positive");
  const double v = p * p * p * (1.0 - p) / (accuracy * accuracy);
  // Exact integers can land a few ulps above themselves (0.01 is inexact).
  const double nearest = std::round(v);
  if (std::fabs(v - nearest) <= 1e-9 * std::max(v, 1.0)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(v));
}

BumpHitProbability bump_hit_probability(std::size_t population_count, std::size_t dim,
                                        double epsilon, const BoxDomain& domain,
                                        std::optional<std::span<const double>> center) {
  if (dim != domain.dim()) throw ConfigError("dimension does not match the domain");
  if (!(epsilon > 0.0)) throw ConfigError("bump epsilon must be positive");
  const double radius = 1.0 / epsilon;
  for (std::size_t k = 0; k < dim; ++k) {
    const bool fits = center ? ((*center)[k] - radius >= domain.lower()[k] &&
                                (*center)[k] + radius <= domain.upper()[k])
                             : 2.0 * radius <= domain.width(k);
    if (!fits) throw ConfigError("bump support is not contained in the domain");
  }
  const double half = 0.5 * static_cast<double>(dim);
  const double ball = std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) *
                      std::pow(radius, static_cast<double>(dim));
  BumpHitProbability out;
  out.p_single = ball / domain.volume();
  out.p_none = std::pow(1.0 - out.p_single, static_cast<double>(population_count));
  return out;
}

std::string format_outcome_bits(const std::vector<bool>& bits) {
  std::string line(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) line[i] = '1';
  }
  return line;
}

std::vector<bool> parse_outcome_bits(std::string_view line) {
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  std::vector<bool> bits;
  bits.reserve(line.size());
  for (char ch : line) {
    if (ch != '0' && ch != '1') throw ConfigError("outcome lines may only contain '0' and '1'");
    bits.push_back(ch == '1');
  }
  return bits;
}

}  // namespace fortify
