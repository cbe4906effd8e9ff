// AVX2 variants of the evaluation kernels. Compiled with -mavx2 (no FMA) and
// dispatched only after a runtime CPU check. Each lane follows the exact
// operation sequence of kernel_math.hpp.

#include <immintrin.h>

#include <array>
#include <cassert>
#include <cmath>

#include "fortify/kernels.hpp"
#include "kernel_math.hpp"

namespace fortify::kernels::avx2 {

namespace {

namespace d = detail;

constexpr int kRoundNearest = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d negate(__m256d v) { return _mm256_xor_pd(v, splat(-0.0)); }

inline __m256d sin_poly(__m256d r, __m256d z) {
  __m256d tail = _mm256_add_pd(splat(d::kS5), _mm256_mul_pd(z, splat(d::kS6)));
  tail = _mm256_add_pd(splat(d::kS4), _mm256_mul_pd(z, tail));
  tail = _mm256_add_pd(splat(d::kS3), _mm256_mul_pd(z, tail));
  tail = _mm256_add_pd(splat(d::kS2), _mm256_mul_pd(z, tail));
  const __m256d inner = _mm256_add_pd(splat(d::kS1), _mm256_mul_pd(z, tail));
  return _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(z, r), inner));
}

inline __m256d cos_poly(__m256d z) {
  __m256d tail = _mm256_add_pd(splat(d::kC5), _mm256_mul_pd(z, splat(d::kC6)));
  tail = _mm256_add_pd(splat(d::kC4), _mm256_mul_pd(z, tail));
  tail = _mm256_add_pd(splat(d::kC3), _mm256_mul_pd(z, tail));
  tail = _mm256_add_pd(splat(d::kC2), _mm256_mul_pd(z, tail));
  tail = _mm256_add_pd(splat(d::kC1), _mm256_mul_pd(z, tail));
  tail = _mm256_mul_pd(z, tail);
  const __m256d hz = _mm256_mul_pd(splat(0.5), z);
  const __m256d w = _mm256_sub_pd(splat(1.0), hz);
  const __m256d corr = _mm256_add_pd(
      _mm256_sub_pd(_mm256_sub_pd(splat(1.0), w), hz), _mm256_mul_pd(z, tail));
  return _mm256_add_pd(w, corr);
}

inline __m256d lane_mask(__m256i values, int target) {
  return _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(values, _mm256_set1_epi64x(target)));
}

__m256d cos4(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(splat(-0.0), x);
  const __m256d in_range = _mm256_cmp_pd(ax, splat(d::kCosReduceLimit), _CMP_LE_OQ);

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, splat(d::kTwoOverPi)), kRoundNearest);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, splat(d::kPio2Hi)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, splat(d::kPio2Mid)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, splat(d::kPio2Lo)));
  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d s = sin_poly(r, z);
  const __m256d c = cos_poly(z);

  const __m128i q32 = _mm_and_si128(_mm256_cvtpd_epi32(k), _mm_set1_epi32(3));
  const __m256i q = _mm256_cvtepi32_epi64(q32);
  __m256d res = c;
  res = _mm256_blendv_pd(res, negate(s), lane_mask(q, 1));
  res = _mm256_blendv_pd(res, negate(c), lane_mask(q, 2));
  res = _mm256_blendv_pd(res, s, lane_mask(q, 3));

  const int outside = _mm256_movemask_pd(in_range) ^ 0xF;
  if (outside != 0) {
    alignas(32) std::array<double, 4> xs;
    alignas(32) std::array<double, 4> out;
    _mm256_store_pd(xs.data(), x);
    _mm256_store_pd(out.data(), res);
    for (int lane = 0; lane < 4; ++lane) {
      if (outside & (1 << lane)) out[lane] = std::cos(xs[lane]);
    }
    res = _mm256_load_pd(out.data());
  }
  return res;
}

inline __m256d pow2_normal(__m128i e) {
  const __m256i biased = _mm256_cvtepi32_epi64(_mm_add_epi32(e, _mm_set1_epi32(1023)));
  return _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
}

inline __m256d exp_poly(__m256d r) {
  __m256d hi = _mm256_add_pd(splat(d::kE12), _mm256_mul_pd(r, splat(d::kE13)));
  hi = _mm256_add_pd(splat(d::kE11), _mm256_mul_pd(r, hi));
  hi = _mm256_add_pd(splat(d::kE10), _mm256_mul_pd(r, hi));
  hi = _mm256_add_pd(splat(d::kE9), _mm256_mul_pd(r, hi));
  hi = _mm256_add_pd(splat(d::kE8), _mm256_mul_pd(r, hi));
  hi = _mm256_add_pd(splat(d::kE7), _mm256_mul_pd(r, hi));
  hi = _mm256_add_pd(splat(d::kE6), _mm256_mul_pd(r, hi));
  __m256d p = _mm256_add_pd(splat(d::kE5), _mm256_mul_pd(r, hi));
  p = _mm256_add_pd(splat(d::kE4), _mm256_mul_pd(r, p));
  p = _mm256_add_pd(splat(d::kE3), _mm256_mul_pd(r, p));
  p = _mm256_add_pd(splat(d::kE2), _mm256_mul_pd(r, p));
  p = _mm256_add_pd(splat(1.0), _mm256_mul_pd(r, p));
  return _mm256_add_pd(splat(1.0), _mm256_mul_pd(r, p));
}

__m256d exp4(__m256d x) {
  const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d too_big = _mm256_cmp_pd(x, splat(d::kExpMax), _CMP_GT_OQ);
  const __m256d too_small = _mm256_cmp_pd(x, splat(d::kExpMin), _CMP_LT_OQ);
  const __m256d special = _mm256_or_pd(is_nan, _mm256_or_pd(too_big, too_small));
  const __m256d xc = _mm256_blendv_pd(x, _mm256_setzero_pd(), special);

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, splat(d::kLog2e)), kRoundNearest);
  __m256d r = _mm256_sub_pd(xc, _mm256_mul_pd(k, splat(d::kLn2Hi)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, splat(d::kLn2Lo)));

  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m128i k1 = _mm_srai_epi32(ki, 1);
  const __m128i k2 = _mm_sub_epi32(ki, k1);
  __m256d res = _mm256_mul_pd(_mm256_mul_pd(exp_poly(r), pow2_normal(k1)), pow2_normal(k2));

  res = _mm256_blendv_pd(res, splat(std::numeric_limits<double>::infinity()), too_big);
  res = _mm256_blendv_pd(res, _mm256_setzero_pd(), too_small);
  return _mm256_blendv_pd(res, x, is_nan);
}

}  // namespace

void branin(const BraninTerms& t, std::span<const double> x1,
            std::span<const double> x2, std::span<double> out) {
  assert(x1.size() == out.size() && x2.size() == out.size());
  const std::size_t n = out.size();
  const __m256d a = splat(t.a);
  const __m256d b = splat(t.b);
  const __m256d c = splat(t.c);
  const __m256d r = splat(t.r);
  const __m256d s1t = splat(t.s_one_minus_t);
  const __m256d s = splat(t.s);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v1 = _mm256_loadu_pd(x1.data() + i);
    const __m256d v2 = _mm256_loadu_pd(x2.data() + i);
    const __m256d x1sq = _mm256_mul_pd(v1, v1);
    __m256d u = _mm256_sub_pd(v2, _mm256_mul_pd(b, x1sq));
    u = _mm256_add_pd(u, _mm256_mul_pd(c, v1));
    u = _mm256_sub_pd(u, r);
    const __m256d quad = _mm256_mul_pd(_mm256_mul_pd(a, u), u);
    const __m256d res = _mm256_add_pd(_mm256_add_pd(quad, _mm256_mul_pd(s1t, cos4(v1))), s);
    _mm256_storeu_pd(out.data() + i, res);
  }
  for (; i < n; ++i) {
    out[i] = d::branin_point(t.a, t.b, t.c, t.r, t.s_one_minus_t, t.s, x1[i], x2[i]);
  }
}

void subtract_bump(const BumpTerms& bump, std::span<const double> coords,
                   std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t dim = bump.center.size();
  assert(coords.size() == n * dim);
  const __m256d eps = splat(bump.epsilon);
  const __m256d amp = splat(bump.amplitude);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(coords.data() + k * n + i), splat(bump.center[k]));
      r2 = _mm256_add_pd(r2, _mm256_mul_pd(diff, diff));
    }
    const __m256d er = _mm256_mul_pd(eps, _mm256_sqrt_pd(r2));
    const __m256d inside = _mm256_cmp_pd(er, splat(1.0), _CMP_LT_OQ);
    if (_mm256_movemask_pd(inside) == 0) continue;
    const __m256d denom = _mm256_sub_pd(splat(1.0), _mm256_mul_pd(er, er));
    __m256d arg = _mm256_div_pd(splat(-1.0), denom);
    arg = _mm256_blendv_pd(splat(-1.0), arg, inside);
    const __m256d depth = _mm256_and_pd(_mm256_mul_pd(amp, exp4(arg)), inside);
    const __m256d cur = _mm256_loadu_pd(out.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(cur, depth));
  }
  for (; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = coords[k * n + i] - bump.center[k];
      r2 = r2 + diff * diff;
    }
    const double depth = d::bump_point(r2, bump.epsilon, bump.amplitude);
    if (depth != 0.0) out[i] = out[i] - depth;
  }
}

}  // namespace fortify::kernels::avx2
