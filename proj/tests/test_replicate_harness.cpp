#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fortify/fortification.hpp"
#include "fortify/replicate_harness.hpp"
#include "oracles.hpp"

using namespace fortify;

namespace {

constexpr double kPi = std::numbers::pi;

RunRecord record_at(std::vector<double> x, double f) {
  RunRecord r;
  r.best_x = std::move(x);
  r.best_f = f;
  return r;
}

bool same_summary(const ReplicateSummary& a, const ReplicateSummary& b) {
  return a.n_runs == b.n_runs && a.n_failures == b.n_failures &&
         a.failure_percent == b.failure_percent && a.per_optimum_percent == b.per_optimum_percent &&
         a.mean_total_evals == b.mean_total_evals && a.mean_de_evals == b.mean_de_evals &&
         a.mean_polish_evals == b.mean_polish_evals && a.outcome_bits == b.outcome_bits;
}

}  // namespace

TEST_CASE("classify_run") {
  const TestProblem problem = branin_registry();
  SuccessCriterion crit;
  crit.target_value = 0.397887;

  const auto c1 = classify_run(record_at({kPi, 2.275}, crit.target_value + 0.005), problem.optima, crit);
  CHECK(c1.success);
  CHECK(c1.nearest_label == 2);

  const auto c2 = classify_run(record_at({kPi, 2.275}, crit.target_value + 0.0101), problem.optima, crit);
  CHECK_FALSE(c2.success);

  // Fortified target: a run that settled on the plain optimum 2 fails.
  auto [fortified, optima] = fortify::fortify(problem.objective, problem.optima, 1, 1.0, 10.0);
  SuccessCriterion fcrit;
  fcrit.target_value = fortified.fortified_optimum_value;
  CHECK(fcrit.target_value == doctest::Approx(0.397887 - 10.0 / std::numbers::e).epsilon(1e-5));
  const auto c3 = classify_run(record_at({kPi, 2.275}, 0.3979), optima, fcrit);
  CHECK_FALSE(c3.success);
  CHECK(c3.nearest_label == 2);

  // 1.5 away from everything.
  const auto c4 = classify_run(record_at({kPi + 1.5, 2.275}, 5.0), problem.optima, crit);
  CHECK_FALSE(c4.nearest_label.has_value());

  SuccessCriterion bad;
  bad.value_tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SuccessCriterion{};
  bad.near_radius = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("classify_run breaks distance ties toward the lower label") {
  const std::vector<KnownOptimum> optima = {{{0.0, 1.0}, 0.0, 2}, {{0.0, -1.0}, 0.0, 1}};
  const auto c = classify_run(record_at({0.0, 0.0}, 0.0), optima, SuccessCriterion{});
  CHECK(c.nearest_label == 1);
}

TEST_CASE("sigma_fail follows its printed form") {
  CHECK(sigma_fail(2.0 / 3.0, 30) == doctest::Approx(1.72).epsilon(0.01 / 1.72));
  CHECK(sigma_fail(0.0, 30) == 0.0);
  CHECK(sigma_fail(1.0, 30) == 0.0);
  CHECK(sigma_fail(0.5, 100) == doctest::Approx(2.5));
  CHECK(binomial_count_sd(0.5, 100) == doctest::Approx(5.0));
  CHECK(binomial_proportion_se(0.5, 100) == doctest::Approx(0.05));
}

TEST_CASE("required_runs") {
  CHECK(required_runs(0.75, 0.01) == 1055);
  CHECK(required_runs(0.5, 0.01) == 625);
  double best_p = 0.0;
  std::size_t best_n = 0;
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    const std::size_t n = required_runs(p, 0.01);
    if (n > best_n) {
      best_n = n;
      best_p = p;
    }
  }
  CHECK(best_p == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("bump hit probability") {
  const BoxDomain square({0.0, 0.0}, {15.0, 15.0});
  const auto one = bump_hit_probability(1, 2, 1.0, square);
  CHECK(std::fabs(one.p_single - kPi / 225.0) < 1e-6);
  CHECK(one.p_none == doctest::Approx(1.0 - kPi / 225.0));
  const auto many = bump_hit_probability(165, 2, 1.0, square);
  CHECK(std::fabs(many.p_none - 0.098) < 0.002);

  // Branin's box and the optimum-1 center; the ball fits.
  const TestProblem problem = branin_registry();
  const auto& c1 = find_optimum(problem.optima, 1).location;
  const auto branin_box = bump_hit_probability(40, 2, 1.0, problem.objective.domain(),
                                               std::span<const double>(c1));
  CHECK(branin_box.p_single == doctest::Approx(kPi / 225.0));

  // Ball wider than the box, or poking out around the center.
  CHECK_THROWS_AS(bump_hit_probability(1, 2, 0.05, square), ConfigError);
  const std::vector<double> edge = {0.5, 7.0};
  CHECK_THROWS_AS(bump_hit_probability(1, 2, 1.0, square, std::span<const double>(edge)),
                  ConfigError);
  CHECK_THROWS_AS(bump_hit_probability(1, 2, 0.0, square), ConfigError);
}

TEST_CASE("replicates are identical for any worker count") {
  const TestProblem problem = branin_registry();
  auto [fortified, optima] = fortify::fortify(problem.objective, problem.optima, 1, 1.0, 10.0);
  const ObjectiveFactory factory = [obj = fortified.objective] { return obj.fresh(); };
  SuccessCriterion crit;
  crit.target_value = fortified.fortified_optimum_value;
  DEConfig cfg;
  cfg.pop = 2;
  cfg.max_iter = 2;
  cfg.polish = true;
  const ReplicateSummary one = run_replicates(factory, optima, cfg, crit, 300, 7, 1);
  for (unsigned w : {4u, 8u}) {
    CHECK(same_summary(one, run_replicates(factory, optima, cfg, crit, 300, 7, w)));
  }
  CHECK(one.outcome_bits.size() == 300);
  const double per_sum =
      std::accumulate(one.per_optimum_percent.begin(), one.per_optimum_percent.end(), 0.0);
  CHECK(per_sum <= 100.0 + 1e-9);
  CHECK(one.failure_percent == doctest::Approx(100.0 * one.n_failures / one.n_runs));
  CHECK(static_cast<std::size_t>(std::count(one.outcome_bits.begin(), one.outcome_bits.end(), true)) ==
        one.n_failures);
  CHECK(one.mean_total_evals == doctest::Approx(one.mean_de_evals + one.mean_polish_evals));
  CHECK(one.mean_de_evals == 12.0);
}

TEST_CASE("a fortified success is always at the bumped optimum") {
  const TestProblem problem = branin_registry();
  for (int label : {1, 2, 3}) {
    auto [fortified, optima] =
        fortify::fortify(problem.objective, problem.optima, label, 1.0, 10.0);
    SuccessCriterion crit;
    crit.target_value = fortified.fortified_optimum_value;
    for (std::uint64_t i = 0; i < 150; ++i) {
      ObjectiveFunction f = fortified.objective.fresh();
      DEConfig cfg;
      cfg.pop = 10;
      cfg.max_iter = 10;
      cfg.polish = true;
      cfg.seed = derive_seed(label, i);
      const RunRecord r = de_minimize(f, cfg);
      const auto c = classify_run(r, optima, crit);
      if (c.success) CHECK(c.nearest_label == label);
    }
  }
}

TEST_CASE("failure spread across disjoint seeds looks binomial") {
  const TestProblem problem = branin_registry();
  const ObjectiveFactory factory = [obj = problem.objective] { return obj.fresh(); };
  SuccessCriterion crit;
  crit.target_value = find_optimum(problem.optima, 1).value;
  DEConfig cfg;
  cfg.pop = 10;
  cfg.max_iter = 10;
  const std::size_t n = 200;
  std::vector<double> fractions;
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    fractions.push_back(run_replicates(factory, problem.optima, cfg, crit, n, seed).failure_percent /
                        100.0);
  }
  const double mean = std::accumulate(fractions.begin(), fractions.end(), 0.0) / fractions.size();
  double var = 0.0;
  for (double f : fractions) var += (f - mean) * (f - mean);
  const double sd = std::sqrt(var / (fractions.size() - 1));
  const double expected = std::sqrt(mean * (1.0 - mean) / n);
  // Twelve samples: the sample sd should sit well within a factor of two.
  CHECK(mean > 0.1);
  CHECK(sd > 0.5 * expected);
  CHECK(sd < 2.0 * expected);
}

TEST_CASE("outcome bits round-trip") {
  const std::vector<bool> bits = {true, false, false, true, true};
  CHECK(format_outcome_bits(bits) == "10011");
  CHECK(parse_outcome_bits("  10011\n") == bits);
  CHECK(parse_outcome_bits("").empty());
  CHECK_THROWS_AS(parse_outcome_bits("10a1"), ConfigError);
  CHECK_THROWS_AS(parse_outcome_bits("1 0"), ConfigError);
}
