#pragma once
// Independent reference computations for the tests. Deliberately written
// against libm and plain loops, never against the library's kernels.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline double branin(double x1, double x2) {
  constexpr double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double u = x2 - b * x1 * x1 + c * x1 - 6.0;
  return u * u + 10.0 * (1.0 - t) * std::cos(x1) + 10.0;
}

inline double phi(double r, double epsilon) {
  const double er = epsilon * r;
  return er < 1.0 ? std::exp(-1.0 / (1.0 - er * er)) : 0.0;
}

inline double fortified_branin(double x1, double x2, double c1, double c2, double epsilon,
                               double amplitude) {
  return branin(x1, x2) - amplitude * phi(std::hypot(x1 - c1, x2 - c2), epsilon);
}

template <typename F>
std::vector<double> central_gradient(F&& f, std::span<const double> x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> p(x.begin(), x.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    p[k] = x[k] + h;
    const double up = f(p);
    p[k] = x[k] - h;
    const double down = f(p);
    p[k] = x[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Distance in units in the last place between two finite doubles.
inline std::uint64_t ulp_distance(double a, double b) {
  auto key = [](double v) {
    const auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const std::int64_t ka = key(a);
  const std::int64_t kb = key(b);
  return ka > kb ? static_cast<std::uint64_t>(ka) - static_cast<std::uint64_t>(kb)
                 : static_cast<std::uint64_t>(kb) - static_cast<std::uint64_t>(ka);
}

/// Standard error of the all-fail fraction over n_groups independent groups
/// of m runs, each failing with probability p.
inline double group_fail_se(double p, std::size_t m, std::size_t n_groups) {
  const double q = std::pow(p, static_cast<double>(m));
  return std::sqrt(q * (1.0 - q) / static_cast<double>(n_groups));
}

}  // namespace oracle
