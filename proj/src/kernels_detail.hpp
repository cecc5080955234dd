#pragma once

// Per-element cores shared by every kernel backend. SIMD backends use these
// for loop tails, so tail elements match the scalar reference bitwise. These
// translation units are compiled with -ffp-contract=off; keep the operation
// sequences exactly as written when porting to a new backend.

#include <bit>
#include <cmath>

#include "holoball/kernels.hpp"

namespace holoball::kernels::detail {

// Exponent handling for |1-<z,a>|^(-e) on top of den2 = |1-<z,a>|^2:
// nonnegative integer e up to 64 runs as an explicit multiply chain (plus one
// sqrt for odd e); anything else falls back to std::pow(den2, -e/2).
struct ExpPlan {
  bool integral = false;
  unsigned half = 0;
  bool odd = false;
  double neg_half = 0.0;

  static ExpPlan make(double e) {
    ExpPlan p;
    p.neg_half = -0.5 * e;
    const double r = std::nearbyint(e);
    if (e == r && r >= 0.0 && r <= 64.0) {
      const unsigned k = static_cast<unsigned>(r);
      p.integral = true;
      p.half = k / 2;
      p.odd = (k & 1u) != 0;
    }
    return p;
  }
};

// x^k by square-and-multiply, most significant bit first.
inline double pow_uint(double x, unsigned k) {
  if (k == 0) return 1.0;
  const int msb = 31 - std::countl_zero(k);
  double r = x;
  for (int b = msb - 1; b >= 0; --b) {
    r = r * r;
    if ((k >> b) & 1u) r = r * x;
  }
  return r;
}

// |1 - <z_i, a>|^2.
inline double den2_at(const CloudView& c, const Center& a, std::size_t i) {
  double re = 1.0, im = 0.0;
  for (std::size_t d = 0; d < c.n_dim; ++d) {
    const double zr = c.coords[(2 * d) * c.stride + i];
    const double zi = c.coords[(2 * d + 1) * c.stride + i];
    const double ar = a.coords[2 * d];
    const double ai = a.coords[2 * d + 1];
    re -= zr * ar;
    re -= zi * ai;
    im -= zi * ar;
    im += zr * ai;
  }
  return re * re + im * im;
}

inline double rho_sq_at(const CloudView& c, const Center& a, std::size_t i) {
  return 1.0 - a.g2 * c.g2[i] / den2_at(c, a, i);
}

inline void accum_mass(const CloudView& c, const Center& a, double r2, std::size_t i,
                       MassCount& out) {
  if (rho_sq_at(c, a, i) < r2) {
    out.mass += c.weights ? c.weights[i] : 1.0;
    ++out.count;
  }
}

inline void accum_pow(const CloudView& c, const Center& a, const ExpPlan& plan,
                      std::size_t i, PowSum& out) {
  double den2 = den2_at(c, a, i);
  if (den2 < kDenFloor) {
    den2 = kDenFloor;
    ++out.floored;
  }
  double t;
  if (plan.integral) {
    const double inv = 1.0 / den2;
    t = pow_uint(inv, plan.half);
    if (plan.odd) {
      const double rs = 1.0 / std::sqrt(den2);
      t = t * rs;
    }
  } else {
    t = std::pow(den2, plan.neg_half);
  }
  const double w = c.weights ? c.weights[i] : 1.0;
  out.value += w * t;
  out.value_sq += w * t * t;
}

}  // namespace holoball::kernels::detail
