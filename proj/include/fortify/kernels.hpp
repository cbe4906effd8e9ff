#pragma once
// Batch evaluation kernels for the Branin-Hoo landscape and radial bumps.
//
// Every kernel exists as a scalar reference and, where the target supports
// it, an AVX2 variant. Both variants perform the same IEEE operations in the
// same order (cos and exp are computed by in-house polynomials rather than
// libm), so they agree bit for bit. The active variant is chosen at runtime.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace fortify::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// The variant used by the dispatching entry points below.
Isa active_isa();

/// Pins the dispatcher to one variant (std::nullopt restores auto-selection).
/// Throws std::invalid_argument when the requested variant is unavailable.
void force_isa(std::optional<Isa> isa);

/// Branin-Hoo coefficients with s*(1-t) folded in ahead of time:
///   a*(x2 - b*x1^2 + c*x1 - r)^2 + s_one_minus_t*cos(x1) + s
struct BraninTerms {
  double a;
  double b;
  double c;
  double r;
  double s_one_minus_t;
  double s;
};

/// A single bump in a d-dimensional space. center.size() is the dimension.
struct BumpTerms {
  std::span<const double> center;
  double epsilon;
  double amplitude;
};

// Reference scalar math shared by every variant.
double ref_cos(double x);
double ref_exp(double x);

/// exp(-1/(1-(eps*r)^2)) for eps*r < 1, zero otherwise.
double bump_phi(double r, double epsilon);

// Dispatching entry points. Coordinates are structure-of-arrays: for d
// dimensions and n points, coords holds d consecutive blocks of n values.
void branin(const BraninTerms& terms, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out);
void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out);

namespace scalar {
void branin(const BraninTerms& terms, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out);
void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out);
}  // namespace scalar

namespace avx2 {
// Only callable when isa_available(Isa::avx2).
void branin(const BraninTerms& terms, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out);
void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out);
}  // namespace avx2

}  // namespace fortify::kernels
