// NEON variants of the cloud kernels, two atoms per iteration. Mirrors the
// scalar reference operation-for-operation (no fused multiply-add), as in the
// AVX2 backend.

#include "kernels_detail.hpp"

#if defined(HOLOBALL_BUILD_NEON)

#include <arm_neon.h>

namespace holoball::kernels::neon {

namespace {

inline void den_parts(const CloudView& c, const Center& a, std::size_t i, float64x2_t& re,
                      float64x2_t& im) {
  re = vdupq_n_f64(1.0);
  im = vdupq_n_f64(0.0);
  for (std::size_t d = 0; d < c.n_dim; ++d) {
    const float64x2_t zr = vld1q_f64(c.coords + (2 * d) * c.stride + i);
    const float64x2_t zi = vld1q_f64(c.coords + (2 * d + 1) * c.stride + i);
    const float64x2_t ar = vdupq_n_f64(a.coords[2 * d]);
    const float64x2_t ai = vdupq_n_f64(a.coords[2 * d + 1]);
    re = vsubq_f64(re, vmulq_f64(zr, ar));
    re = vsubq_f64(re, vmulq_f64(zi, ai));
    im = vsubq_f64(im, vmulq_f64(zi, ar));
    im = vaddq_f64(im, vmulq_f64(zr, ai));
  }
}

inline float64x2_t den2_vec(const CloudView& c, const Center& a, std::size_t i) {
  float64x2_t re, im;
  den_parts(c, a, i, re, im);
  return vaddq_f64(vmulq_f64(re, re), vmulq_f64(im, im));
}

inline float64x2_t rho_sq_vec(const CloudView& c, const Center& a, std::size_t i) {
  const float64x2_t den2 = den2_vec(c, a, i);
  const float64x2_t g2 = vld1q_f64(c.g2 + i);
  const float64x2_t num = vmulq_f64(vdupq_n_f64(a.g2), g2);
  return vsubq_f64(vdupq_n_f64(1.0), vdivq_f64(num, den2));
}

inline float64x2_t pow_uint_vec(float64x2_t x, unsigned k) {
  if (k == 0) return vdupq_n_f64(1.0);
  const int msb = 31 - std::countl_zero(k);
  float64x2_t r = x;
  for (int b = msb - 1; b >= 0; --b) {
    r = vmulq_f64(r, r);
    if ((k >> b) & 1u) r = vmulq_f64(r, x);
  }
  return r;
}

inline std::uint64_t mask_count(uint64x2_t mask) {
  return vaddvq_u64(vshrq_n_u64(mask, 63));
}

}  // namespace

MassCount ball_mass(const CloudView& c, const Center& a, double r2) {
  MassCount out;
  const float64x2_t r2v = vdupq_n_f64(r2);
  const float64x2_t onev = vdupq_n_f64(1.0);
  const float64x2_t zerov = vdupq_n_f64(0.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= c.count; i += 2) {
    const float64x2_t rho2 = rho_sq_vec(c, a, i);
    const uint64x2_t mask = vcltq_f64(rho2, r2v);
    const float64x2_t w = c.weights ? vld1q_f64(c.weights + i) : onev;
    acc = vaddq_f64(acc, vbslq_f64(mask, w, zerov));
    out.count += mask_count(mask);
  }
  out.mass = vaddvq_f64(acc);
  for (; i < c.count; ++i) detail::accum_mass(c, a, r2, i, out);
  return out;
}

PowSum kernel_pow_sum(const CloudView& c, const Center& a, double exponent) {
  const detail::ExpPlan plan = detail::ExpPlan::make(exponent);
  PowSum out;
  const float64x2_t floorv = vdupq_n_f64(kDenFloor);
  const float64x2_t onev = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  float64x2_t acc_sq = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= c.count; i += 2) {
    float64x2_t den2 = den2_vec(c, a, i);
    out.floored += mask_count(vcltq_f64(den2, floorv));
    den2 = vmaxq_f64(den2, floorv);
    float64x2_t t;
    if (plan.integral) {
      const float64x2_t inv = vdivq_f64(onev, den2);
      t = pow_uint_vec(inv, plan.half);
      if (plan.odd) {
        const float64x2_t rs = vdivq_f64(onev, vsqrtq_f64(den2));
        t = vmulq_f64(t, rs);
      }
    } else {
      double buf[2];
      vst1q_f64(buf, den2);
      buf[0] = std::pow(buf[0], plan.neg_half);
      buf[1] = std::pow(buf[1], plan.neg_half);
      t = vld1q_f64(buf);
    }
    const float64x2_t w = c.weights ? vld1q_f64(c.weights + i) : onev;
    const float64x2_t wt = vmulq_f64(w, t);
    acc = vaddq_f64(acc, wt);
    acc_sq = vaddq_f64(acc_sq, vmulq_f64(wt, t));
  }
  out.value = vaddvq_f64(acc);
  out.value_sq = vaddvq_f64(acc_sq);
  for (; i < c.count; ++i) detail::accum_pow(c, a, plan, i, out);
  return out;
}

void rho_sq_batch(const CloudView& c, const Center& a, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= c.count; i += 2) vst1q_f64(out + i, rho_sq_vec(c, a, i));
  for (; i < c.count; ++i) out[i] = detail::rho_sq_at(c, a, i);
}

}  // namespace holoball::kernels::neon

#endif  // HOLOBALL_BUILD_NEON
