#include <algorithm>
#include <cmath>

#include "fortify/de_optimizer.hpp"

namespace fortify {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Infinity norm of the gradient after zeroing components blocked by an
/// active bound.
double projected_gradient_norm(std::span<const double> x, std::span<const double> g,
                               const BoxDomain& domain) {
  double norm = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const bool blocked = (x[k] <= domain.lower()[k] && g[k] > 0.0) ||
                         (x[k] >= domain.upper()[k] && g[k] < 0.0);
    if (!blocked) norm = std::max(norm, std::fabs(g[k]));
  }
  return norm;
}

// Row-major dense inverse-Hessian approximation.
struct InverseHessian {
  std::size_t dim;
  std::vector<double> h;

  explicit InverseHessian(std::size_t d) : dim(d), h(d * d, 0.0) { reset(1.0); }

  void reset(double diag) {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t k = 0; k < dim; ++k) h[k * dim + k] = diag;
  }

  std::vector<double> times(std::span<const double> v) const {
    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) out[i] += h[i * dim + j] * v[j];
    }
    return out;
  }

  // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
  void update(std::span<const double> s, std::span<const double> y, double sy) {
    const double rho = 1.0 / sy;
    const std::vector<double> hy = times(y);
    const double yhy = dot(y, hy);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        h[i * dim + j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) +
                          (rho * rho * yhy + rho) * s[i] * s[j];
      }
    }
  }
};

}  // namespace

std::vector<double> forward_difference_gradient(ObjectiveFunction& objective,
                                                std::span<const double> x, double fx,
                                                double fd_step) {
  const BoxDomain& domain = objective.domain();
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    double h = fd_step * std::max(std::fabs(x[k]), 1.0);
    if (x[k] + h > domain.upper()[k]) h = -h;
    probe[k] = x[k] + h;
    const double step = probe[k] - x[k];
    grad[k] = (objective(probe) - fx) / step;
    probe[k] = x[k];
  }
  return grad;
}

PolishResult quasi_newton_polish(ObjectiveFunction& objective, std::span<const double> x0,
                                 const BoxDomain& domain, const PolishSettings& settings) {
  const std::size_t dim = domain.dim();
  const std::uint64_t start_count = objective.eval_count();
  auto clamp_into = [&](std::vector<double>& v) {
    for (std::size_t k = 0; k < dim; ++k) {
      v[k] = std::clamp(v[k], domain.lower()[k], domain.upper()[k]);
    }
  };

  std::vector<double> x(x0.begin(), x0.end());
  clamp_into(x);
  double f = objective(x);
  const std::vector<double> x_start = x;
  const double f_start = f;
  std::vector<double> g = forward_difference_gradient(objective, x, f, settings.fd_step);

  PolishResult result;
  InverseHessian hinv(dim);
  std::vector<double> trial(dim);
  std::vector<double> step(dim);
  int it = 0;
  for (; it < settings.max_iterations; ++it) {
    if (projected_gradient_norm(x, g, domain) < settings.gradient_tol) break;

    std::vector<double> dir = hinv.times(g);
    for (auto& v : dir) v = -v;
    if (dot(dir, g) >= 0.0) {
      hinv.reset(1.0);
      for (std::size_t k = 0; k < dim; ++k) dir[k] = -g[k];
    }

    double alpha = 1.0;
    if (it == 0) alpha = std::min(1.0, 1.0 / std::sqrt(dot(g, g)));
    bool accepted = false;
    double f_trial = f;
    for (int bt = 0; bt <= settings.max_backtracks; ++bt, alpha *= settings.backtrack) {
      for (std::size_t k = 0; k < dim; ++k) trial[k] = x[k] + alpha * dir[k];
      clamp_into(trial);
      for (std::size_t k = 0; k < dim; ++k) step[k] = trial[k] - x[k];
      const double predicted = dot(g, step);
      if (!(predicted < 0.0)) break;  // projection removed every descent component
      f_trial = objective(trial);
      if (f_trial <= f + settings.armijo * predicted) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (it == 0) {
        x = x_start;
        f = f_start;
      }
      break;
    }

    std::vector<double> g_trial =
        forward_difference_gradient(objective, trial, f_trial, settings.fd_step);
    std::vector<double> y(dim);
    for (std::size_t k = 0; k < dim; ++k) y[k] = g_trial[k] - g[k];
    const double sy = dot(step, y);
    if (sy > 1e-12 * std::sqrt(dot(step, step) * dot(y, y))) {
      if (it == 0) hinv.reset(sy / dot(y, y));
      hinv.update(step, y, sy);
    }

    const double decrease = (f - f_trial) / std::max({std::fabs(f), std::fabs(f_trial), 1.0});
    x = trial;
    f = f_trial;
    g = std::move(g_trial);
    if (decrease <= settings.ftol) {
      ++it;
      break;
    }
  }

  result.x = std::move(x);
  result.f = f;
  result.iterations = it;
  result.evals = objective.eval_count() - start_count;
  return result;
}

}  // namespace fortify
