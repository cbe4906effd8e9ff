#pragma once
// Scalar reference math for the evaluation kernels. The AVX2 variant mirrors
// each function below operation for operation. Functions have internal
// linkage so the copy compiled with -mavx2 never leaks into other objects.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace fortify::kernels::detail {

// Cody-Waite split of pi/2. The first two parts carry 33 significant bits so
// k*part is exact for |k| < 2^20.
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPio2Hi = 1.57079632673412561417e+00;
inline constexpr double kPio2Mid = 6.07710050630396597660e-11;
inline constexpr double kPio2Lo = 2.02226624879595063154e-21;
// Beyond this magnitude (and for NaN/inf) both variants defer to std::cos.
inline constexpr double kCosReduceLimit = 1.0e5;

inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

inline constexpr double kLog2e = 1.44269504088896338700e+00;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpMax = 709.782712893383973096;
inline constexpr double kExpMin = -745.133219101941108420;

// Taylor coefficients 1/n! for n = 2..13; |r| <= ln2/2 keeps the truncation
// below half an ulp.
inline constexpr double kE2 = 1.0 / 2.0;
inline constexpr double kE3 = kE2 / 3.0;
inline constexpr double kE4 = kE3 / 4.0;
inline constexpr double kE5 = kE4 / 5.0;
inline constexpr double kE6 = kE5 / 6.0;
inline constexpr double kE7 = kE6 / 7.0;
inline constexpr double kE8 = kE7 / 8.0;
inline constexpr double kE9 = kE8 / 9.0;
inline constexpr double kE10 = kE9 / 10.0;
inline constexpr double kE11 = kE10 / 11.0;
inline constexpr double kE12 = kE11 / 12.0;
inline constexpr double kE13 = kE12 / 13.0;

static inline double sin_poly(double r, double z) {
  const double tail = kS2 + z * (kS3 + z * (kS4 + z * (kS5 + z * kS6)));
  return r + (z * r) * (kS1 + z * tail);
}

static inline double cos_poly(double z) {
  const double tail =
      z * (kC1 + z * (kC2 + z * (kC3 + z * (kC4 + z * (kC5 + z * kC6)))));
  const double hz = 0.5 * z;
  const double w = 1.0 - hz;
  return w + (((1.0 - w) - hz) + z * tail);
}

static inline double cos_impl(double x) {
  if (!(std::fabs(x) <= kCosReduceLimit)) return std::cos(x);
  const double k = std::nearbyint(x * kTwoOverPi);
  const double r = ((x - k * kPio2Hi) - k * kPio2Mid) - k * kPio2Lo;
  const double z = r * r;
  switch (static_cast<std::int32_t>(k) & 3) {
    case 0:
      return cos_poly(z);
    case 1:
      return -sin_poly(r, z);
    case 2:
      return -cos_poly(z);
    default:
      return sin_poly(r, z);
  }
}

static inline double pow2_normal(std::int32_t e) {
  return std::bit_cast<double>(static_cast<std::uint64_t>(e + 1023) << 52);
}

static inline double exp_poly(double r) {
  const double hi =
      kE6 + r * (kE7 + r * (kE8 + r * (kE9 + r * (kE10 + r * (kE11 + r * (kE12 + r * kE13))))));
  return 1.0 + r * (1.0 + r * (kE2 + r * (kE3 + r * (kE4 + r * (kE5 + r * hi)))));
}

static inline double exp_impl(double x) {
  if (x != x) return x;
  if (x > kExpMax) return std::numeric_limits<double>::infinity();
  if (x < kExpMin) return 0.0;
  const double k = std::nearbyint(x * kLog2e);
  const double r = (x - k * kLn2Hi) - k * kLn2Lo;
  const auto ki = static_cast<std::int32_t>(k);
  // Two half-scalings keep both factors normal down into the subnormal range.
  const std::int32_t k1 = ki >> 1;
  const std::int32_t k2 = ki - k1;
  return (exp_poly(r) * pow2_normal(k1)) * pow2_normal(k2);
}

static inline double branin_point(double a, double b, double c, double r, double s1t,
                           double s, double x1, double x2) {
  const double x1sq = x1 * x1;
  const double u = ((x2 - b * x1sq) + c * x1) - r;
  return ((a * u) * u + s1t * cos_impl(x1)) + s;
}

/// Amplitude-scaled bump value given the squared distance to the center.
static inline double bump_point(double r2, double epsilon, double amplitude) {
  const double er = epsilon * std::sqrt(r2);
  if (er < 1.0) {
    const double arg = -1.0 / (1.0 - er * er);
    return amplitude * exp_impl(arg);
  }
  return 0.0;
}

}  // namespace fortify::kernels::detail
