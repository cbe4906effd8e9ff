#include <algorithm>
#include <numeric>
#include <string>

#include "fortify/de_optimizer.hpp"

namespace fortify {

void DEConfig::validate(std::size_t dim) const {
  if (pop < 1) throw ConfigError("pop must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be positive");
  if (!(mutation_lo > 0.0 && mutation_lo <= mutation_hi && mutation_hi < 2.0)) {
    throw ConfigError("mutation range must lie within (0, 2)");
  }
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
    throw ConfigError("crossover probability must lie in [0, 1]");
  }
  // best/1 draws two donors distinct from each other and from the target.
  if (population_size(dim) < 4) {
    throw ConfigError("population pop*d = " + std::to_string(population_size(dim)) +
                      " is below the minimum of 4");
  }
}

PointBatch latin_hypercube(std::size_t n, const BoxDomain& domain, Rng& rng) {
  const std::size_t dim = domain.dim();
  PointBatch points(dim, n);
  std::vector<std::size_t> strata(n);
  for (std::size_t k = 0; k < dim; ++k) {
    const double lo = domain.lower()[k];
    const double hi = domain.upper()[k];
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(strata));
    auto axis = points.axis(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double frac = (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(n);
      axis[i] = std::min(hi, lo + (hi - lo) * frac);
    }
  }
  return points;
}

namespace {

std::size_t argmin(std::span<const double> values) {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

/// Picks an index in [0, n) that differs from every entry of `taken`.
/// `taken` must be sorted and hold distinct values below n.
std::size_t draw_excluding(Rng& rng, std::size_t n, std::span<const std::size_t> taken) {
  auto idx = static_cast<std::size_t>(rng.below(n - taken.size()));
  for (std::size_t t : taken) {
    if (idx >= t) ++idx;
  }
  return idx;
}

}  // namespace

RunRecord de_minimize(ObjectiveFunction& objective, const DEConfig& config, Rng& rng) {
  const BoxDomain& domain = objective.domain();
  const std::size_t dim = domain.dim();
  config.validate(dim);
  const std::size_t np = config.population_size(dim);
  const std::uint64_t start_count = objective.eval_count();

  PointBatch population = latin_hypercube(np, domain, rng);
  std::vector<double> energies(np);
  objective.evaluate(population, energies);
  std::size_t best = argmin(energies);

  PointBatch trials(dim, np);
  std::vector<double> trial_energies(np);
  std::vector<double> trial(dim);
  auto make_trial = [&](std::size_t i, double scale, auto&& store) {
    std::size_t taken[2] = {i, 0};
    const std::size_t r0 = draw_excluding(rng, np, std::span<const std::size_t>(taken, 1));
    taken[1] = r0;
    if (taken[0] > taken[1]) std::swap(taken[0], taken[1]);
    const std::size_t r1 = draw_excluding(rng, np, taken);

    const auto fill = static_cast<std::size_t>(rng.below(dim));
    for (std::size_t k = 0; k < dim; ++k) {
      const bool cross = rng.uniform() < config.crossover_prob || k == fill;
      double v = population.at(i, k);
      if (cross) {
        v = population.at(best, k) + scale * (population.at(r0, k) - population.at(r1, k));
        const double lo = domain.lower()[k];
        const double hi = domain.upper()[k];
        if (v < lo || v > hi) v = rng.uniform(lo, hi);
      }
      store(k, v);
    }
  };

  for (int gen = 0; gen < config.max_iter; ++gen) {
    const double scale = rng.uniform(config.mutation_lo, config.mutation_hi);
    if (config.updating == DEConfig::Updating::immediate) {
      for (std::size_t i = 0; i < np; ++i) {
        make_trial(i, scale, [&](std::size_t k, double v) { trial[k] = v; });
        const double f = objective(trial);
        if (f <= energies[i]) {
          energies[i] = f;
          population.set_point(i, trial);
          if (f <= energies[best]) best = i;
        }
      }
    } else {
      for (std::size_t i = 0; i < np; ++i) {
        make_trial(i, scale, [&](std::size_t k, double v) { trials.at(i, k) = v; });
      }
      objective.evaluate(trials, trial_energies);
      for (std::size_t i = 0; i < np; ++i) {
        if (trial_energies[i] <= energies[i]) {
          energies[i] = trial_energies[i];
          for (std::size_t k = 0; k < dim; ++k) population.at(i, k) = trials.at(i, k);
        }
      }
      best = argmin(energies);
    }
  }

  RunRecord record;
  record.best_x = population.point(best);
  record.best_f = energies[best];
  record.de_evals = objective.eval_count() - start_count;
  record.seed_used = config.seed;

  if (config.polish) {
    const std::uint64_t before = objective.eval_count();
    PolishResult polished = quasi_newton_polish(objective, record.best_x, domain);
    record.polish_evals = objective.eval_count() - before;
    if (polished.f < record.best_f) {
      record.best_x = std::move(polished.x);
      record.best_f = polished.f;
    }
  }
  record.total_evals = record.de_evals + record.polish_evals;
  return record;
}

RunRecord de_minimize(ObjectiveFunction& objective, const DEConfig& config) {
  Rng rng(config.seed);
  return de_minimize(objective, config, rng);
}

}  // namespace fortify
