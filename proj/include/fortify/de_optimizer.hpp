#pragma once
// Differential evolution (best/1/bin, dithered scale) with Latin-hypercube
// initialization and an optional bounded quasi-Newton polish.

#include <cstdint>
#include <span>
#include <vector>

#include "fortify/rng.hpp"
#include "fortify/test_functions.hpp"

namespace fortify {

struct DEConfig {
  /// immediate: each trial replaces its target as soon as it is evaluated and
  /// may become the new best within the generation. deferred: the whole
  /// generation of trials is evaluated as one batch before selection.
  enum class Updating { immediate, deferred };

  int pop = 10;  // population multiplier; NP = pop * dimension
  int max_iter = 20;
  bool polish = false;
  double mutation_lo = 0.5;
  double mutation_hi = 1.0;
  double crossover_prob = 0.7;
  std::uint64_t seed = 0;
  Updating updating = Updating::immediate;

  std::size_t population_size(std::size_t dim) const {
    return static_cast<std::size_t>(pop) * dim;
  }
  /// Throws ConfigError for non-positive pop/max_iter, a mutation range
  /// outside (0, 2), a crossover probability outside [0, 1], or NP < 4.
  void validate(std::size_t dim) const;
};

struct RunRecord {
  std::vector<double> best_x;
  double best_f = 0.0;
  std::uint64_t de_evals = 0;
  std::uint64_t polish_evals = 0;
  std::uint64_t total_evals = 0;
  std::uint64_t seed_used = 0;
};

/// n points; along every axis each of the n equal-width strata holds exactly
/// one coordinate, jittered uniformly inside its stratum.
PointBatch latin_hypercube(std::size_t n, const BoxDomain& domain, Rng& rng);

/// Runs exactly max_iter generations (no convergence test), then polishes
/// if requested. de_evals is always NP * (max_iter + 1).
RunRecord de_minimize(ObjectiveFunction& objective, const DEConfig& config, Rng& rng);
/// Same, drawing from Rng(config.seed).
RunRecord de_minimize(ObjectiveFunction& objective, const DEConfig& config);

struct PolishResult {
  std::vector<double> x;
  double f = 0.0;
  std::uint64_t evals = 0;
  int iterations = 0;
};

struct PolishSettings {
  double fd_step = 1e-8;         // relative forward-difference step
  double gradient_tol = 1e-8;    // projected-gradient infinity norm
  double ftol = 2.220446049250313e-09;  // relative decrease per iteration
  int max_iterations = 100;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 30;
};

/// Forward differences with step fd_step*max(|x_k|, 1), taken backwards when
/// the forward probe would leave the box. Costs dim evaluations.
std::vector<double> forward_difference_gradient(ObjectiveFunction& objective,
                                                std::span<const double> x, double fx,
                                                double fd_step = 1e-8);

/// Projected BFGS from x0. Iterates stay inside the box; every objective call
/// (finite-difference probes included) is counted in evals. When the very
/// first line search fails, x0 and f(x0) come back unchanged.
PolishResult quasi_newton_polish(ObjectiveFunction& objective, std::span<const double> x0,
                                 const BoxDomain& domain, const PolishSettings& settings = {});

}  // namespace fortify
