#include <cassert>

#include "fortify/kernels.hpp"
#include "kernel_math.hpp"

namespace fortify::kernels::scalar {

void branin(const BraninTerms& t, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out) {
  assert(x1.size() == out.size() && x2.size() == out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = detail::branin_point(t.a, t.b, t.c, t.r, t.s_one_minus_t, t.s,
                                  x1[i], x2[i]);
  }
}

void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t dim = bump.center.size();
  assert(coords.size() == n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = coords[k * n + i] - bump.center[k];
      r2 = r2 + diff * diff;
    }
    const double depth = detail::bump_point(r2, bump.epsilon, bump.amplitude);
    if (depth != 0.0) out[i] = out[i] - depth;
  }
}

}  // namespace fortify::kernels::scalar
