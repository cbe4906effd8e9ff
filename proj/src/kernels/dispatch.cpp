#include <atomic>
#include <stdexcept>
#include <string>

#include "fortify/kernels.hpp"
#include "kernel_math.hpp"

namespace fortify::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(FORTIFY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa best_available() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

// -1 = automatic, otherwise static_cast<int>(Isa).
std::atomic<int> forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa best = best_available();
  return best;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw std::invalid_argument("kernel variant not available on this CPU: " +
                                std::string(isa_name(*isa)));
  }
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

double ref_cos(double x) { return detail::cos_impl(x); }
double ref_exp(double x) { return detail::exp_impl(x); }

double bump_phi(double r, double epsilon) {
  const double er = epsilon * r;
  if (er < 1.0) return detail::exp_impl(-1.0 / (1.0 - er * er));
  return 0.0;
}

void branin(const BraninTerms& terms, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out) {
  if (active_isa() == Isa::avx2) {
    avx2::branin(terms, x1, x2, out);
  } else {
    scalar::branin(terms, x1, x2, out);
  }
}

void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out) {
  if (active_isa() == Isa::avx2) {
    avx2::subtract_bump(bump, coords, out);
  } else {
    scalar::subtract_bump(bump, coords, out);
  }
}

#if !defined(FORTIFY_HAVE_AVX2)
namespace avx2 {
void branin(const BraninTerms& terms, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out) {
  scalar::branin(terms, x1, x2, out);
}
void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out) {
  scalar::subtract_bump(bump, coords, out);
}
}  // namespace avx2
#endif

}  // namespace fortify::kernels
