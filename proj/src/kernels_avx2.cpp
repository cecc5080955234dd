// AVX2 variants of the cloud kernels, four atoms per iteration. Fused
// multiply-add is deliberately not used: each elementary operation mirrors
// the scalar reference exactly, so per-element values agree bitwise and only
// the accumulation order differs. Loop tails reuse the scalar cores.

#include "kernels_detail.hpp"

#if defined(HOLOBALL_BUILD_AVX2)

#include <immintrin.h>

namespace holoball::kernels::avx2 {

namespace {

// (re, im) of 1 - <z_i, a> for four consecutive atoms.
inline void den_parts(const CloudView& c, const Center& a, std::size_t i, __m256d& re,
                      __m256d& im) {
  re = _mm256_set1_pd(1.0);
  im = _mm256_setzero_pd();
  for (std::size_t d = 0; d < c.n_dim; ++d) {
    const __m256d zr = _mm256_loadu_pd(c.coords + (2 * d) * c.stride + i);
    const __m256d zi = _mm256_loadu_pd(c.coords + (2 * d + 1) * c.stride + i);
    const __m256d ar = _mm256_set1_pd(a.coords[2 * d]);
    const __m256d ai = _mm256_set1_pd(a.coords[2 * d + 1]);
    re = _mm256_sub_pd(re, _mm256_mul_pd(zr, ar));
    re = _mm256_sub_pd(re, _mm256_mul_pd(zi, ai));
    im = _mm256_sub_pd(im, _mm256_mul_pd(zi, ar));
    im = _mm256_add_pd(im, _mm256_mul_pd(zr, ai));
  }
}

inline __m256d den2_vec(const CloudView& c, const Center& a, std::size_t i) {
  __m256d re, im;
  den_parts(c, a, i, re, im);
  return _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
}

inline __m256d rho_sq_vec(const CloudView& c, const Center& a, std::size_t i) {
  const __m256d den2 = den2_vec(c, a, i);
  const __m256d g2 = _mm256_loadu_pd(c.g2 + i);
  const __m256d num = _mm256_mul_pd(_mm256_set1_pd(a.g2), g2);
  return _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_div_pd(num, den2));
}

inline __m256d pow_uint_vec(__m256d x, unsigned k) {
  if (k == 0) return _mm256_set1_pd(1.0);
  const int msb = 31 - std::countl_zero(k);
  __m256d r = x;
  for (int b = msb - 1; b >= 0; --b) {
    r = _mm256_mul_pd(r, r);
    if ((k >> b) & 1u) r = _mm256_mul_pd(r, x);
  }
  return r;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

MassCount ball_mass(const CloudView& c, const Center& a, double r2) {
  MassCount out;
  const __m256d r2v = _mm256_set1_pd(r2);
  const __m256d onev = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= c.count; i += 4) {
    const __m256d rho2 = rho_sq_vec(c, a, i);
    const __m256d mask = _mm256_cmp_pd(rho2, r2v, _CMP_LT_OQ);
    const __m256d w = c.weights ? _mm256_loadu_pd(c.weights + i) : onev;
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, w));
    out.count += static_cast<std::uint64_t>(std::popcount(
        static_cast<unsigned>(_mm256_movemask_pd(mask))));
  }
  out.mass = hsum(acc);
  for (; i < c.count; ++i) detail::accum_mass(c, a, r2, i, out);
  return out;
}

PowSum kernel_pow_sum(const CloudView& c, const Center& a, double exponent) {
  const detail::ExpPlan plan = detail::ExpPlan::make(exponent);
  PowSum out;
  const __m256d floorv = _mm256_set1_pd(kDenFloor);
  const __m256d onev = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d acc_sq = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= c.count; i += 4) {
    __m256d den2 = den2_vec(c, a, i);
    const __m256d low = _mm256_cmp_pd(den2, floorv, _CMP_LT_OQ);
    out.floored += static_cast<std::uint64_t>(std::popcount(
        static_cast<unsigned>(_mm256_movemask_pd(low))));
    den2 = _mm256_max_pd(den2, floorv);
    __m256d t;
    if (plan.integral) {
      const __m256d inv = _mm256_div_pd(onev, den2);
      t = pow_uint_vec(inv, plan.half);
      if (plan.odd) {
        const __m256d rs = _mm256_div_pd(onev, _mm256_sqrt_pd(den2));
        t = _mm256_mul_pd(t, rs);
      }
    } else {
      alignas(32) double buf[4];
      _mm256_store_pd(buf, den2);
      for (double& b : buf) b = std::pow(b, plan.neg_half);
      t = _mm256_load_pd(buf);
    }
    const __m256d w = c.weights ? _mm256_loadu_pd(c.weights + i) : onev;
    const __m256d wt = _mm256_mul_pd(w, t);
    acc = _mm256_add_pd(acc, wt);
    acc_sq = _mm256_add_pd(acc_sq, _mm256_mul_pd(wt, t));
  }
  out.value = hsum(acc);
  out.value_sq = hsum(acc_sq);
  for (; i < c.count; ++i) detail::accum_pow(c, a, plan, i, out);
  return out;
}

void rho_sq_batch(const CloudView& c, const Center& a, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= c.count; i += 4) _mm256_storeu_pd(out + i, rho_sq_vec(c, a, i));
  for (; i < c.count; ++i) out[i] = detail::rho_sq_at(c, a, i);
}

}  // namespace holoball::kernels::avx2

#endif  // HOLOBALL_BUILD_AVX2
