#pragma once

// Geometry of the open unit ball of C^n: Hermitian inner product, the
// Moebius involution sigma_z, the pseudo-hyperbolic and Bergman distances,
// and the Euclidean ellipsoid realization of pseudo-hyperbolic balls.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace holoball {

using cplx = std::complex<double>;

// Below this magnitude a vector is treated as exactly zero (projection and
// Moebius conventions). Exact-zero semantics, no fuzzy cutoff.
inline constexpr double kZeroVectorThreshold = 1e-300;

// A point of C^n, n >= 1, all coordinates finite.
struct CVec {
  std::vector<cplx> c;

  CVec() = default;
  explicit CVec(std::size_t n) : c(n) {}
  CVec(std::initializer_list<cplx> init) : c(init) {}

  std::size_t dim() const { return c.size(); }
  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  bool operator==(const CVec&) const = default;
};

inline CVec unit_vector(std::size_t n, std::size_t j) {
  CVec e(n);
  e[j] = 1.0;
  return e;
}

inline void check_same_dim(const CVec& z, const CVec& w) {
  if (z.dim() != w.dim())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(z.dim()) +
                                " vs " + std::to_string(w.dim()));
  if (z.dim() == 0) throw std::invalid_argument("dimension must be >= 1");
}

// <z,w> = z_1 conj(w_1) + ... + z_n conj(w_n).
inline cplx inner(const CVec& z, const CVec& w) {
  check_same_dim(z, w);
  double re = 0.0, im = 0.0;
  for (std::size_t d = 0; d < z.dim(); ++d) {
    const double zr = z[d].real(), zi = z[d].imag();
    const double wr = w[d].real(), wi = w[d].imag();
    re += zr * wr + zi * wi;
    im += zi * wr - zr * wi;
  }
  return {re, im};
}

// |z| computed with a power-of-two prescale so that squared magnitudes of
// subnormal-range inputs do not flush to zero.
inline double stable_abs(const CVec& z) {
  double m = 0.0;
  for (const cplx& zd : z.c)
    m = std::max(m, std::max(std::fabs(zd.real()), std::fabs(zd.imag())));
  if (m == 0.0) return 0.0;
  const double scale = std::exp2(static_cast<double>(std::ilogb(m)));
  double s = 0.0;
  for (const cplx& zd : z.c) {
    const double re = zd.real() / scale, im = zd.imag() / scale;
    s += re * re + im * im;
  }
  return scale * std::sqrt(s);
}

inline CVec operator+(const CVec& a, const CVec& b) {
  check_same_dim(a, b);
  CVec r(a.dim());
  for (std::size_t d = 0; d < a.dim(); ++d) r[d] = a[d] + b[d];
  return r;
}

inline CVec operator-(const CVec& a, const CVec& b) {
  check_same_dim(a, b);
  CVec r(a.dim());
  for (std::size_t d = 0; d < a.dim(); ++d) r[d] = a[d] - b[d];
  return r;
}

inline CVec operator*(cplx s, const CVec& a) {
  CVec r(a.dim());
  for (std::size_t d = 0; d < a.dim(); ++d) r[d] = s * a[d];
  return r;
}

// A point of the open unit ball with its boundary distance tracked
// explicitly. `gap` = 1 - |vec| is authoritative near the boundary; every
// 1-|z|^2 in this library is taken as gap*(2-gap), never as a difference of
// nearly-equal quantities.
struct BallPoint {
  CVec vec;
  double gap = 1.0;

  BallPoint() = default;

  // Construct from coordinates; gap derived from |vec|.
  static BallPoint from(CVec v) {
    const double a = stable_abs(v);
    if (!(a < 1.0))
      throw std::domain_error("point lies outside the open unit ball (|z| = " +
                              std::to_string(a) + ")");
    return BallPoint{std::move(v), 1.0 - a};
  }

  // Construct with a caller-supplied gap (stable sampling / Moebius images).
  static BallPoint with_gap(CVec v, double g) {
    if (!(g > 0.0) || !(g <= 1.0))
      throw std::domain_error("ball point gap must lie in (0, 1]");
    return BallPoint{std::move(v), g};
  }

  BallPoint(CVec v, double g) : vec(std::move(v)), gap(g) {}

  std::size_t dim() const { return vec.dim(); }
  double abs() const { return 1.0 - gap; }
  // 1 - |z|^2 = gap * (2 - gap), exact in terms of gap.
  double one_minus_sq() const { return gap * (2.0 - gap); }
};

inline BallPoint origin(std::size_t n) { return BallPoint{CVec(n), 1.0}; }

inline BallPoint ball_point(std::initializer_list<cplx> coords) {
  return BallPoint::from(CVec{coords});
}

// Orthogonal projections onto [z] = C*z and its complement:
// P_z(w) = (<w,z>/|z|^2) z, Q_z(w) = w - P_z(w), with P_0(w) = 0.
inline std::pair<CVec, CVec> proj_pair(const CVec& z, const CVec& w) {
  check_same_dim(z, w);
  const double za = stable_abs(z);
  if (za < kZeroVectorThreshold) return {CVec(z.dim()), w};
  // Power-of-two prescale keeps <z,z> away from underflow and makes
  // P_z(z) == z bitwise.
  const double scale = std::exp2(static_cast<double>(std::ilogb(za)) + 1.0);
  CVec zs(z.dim());
  for (std::size_t d = 0; d < z.dim(); ++d) zs[d] = z[d] / scale;
  const double zs2 = inner(zs, zs).real();
  const cplx coef = inner(w, zs) / zs2;
  CVec p(z.dim()), q(z.dim());
  for (std::size_t d = 0; d < z.dim(); ++d) {
    p[d] = coef * zs[d];
    q[d] = w[d] - p[d];
  }
  return {p, q};
}

// The Moebius involution interchanging 0 and z:
//   sigma_z(w) = (z - P_z(w) - sqrt(1-|z|^2) Q_z(w)) / (1 - <w,z>).
// The image gap is derived from
//   1 - |sigma_z(w)|^2 = (1-|z|^2)(1-|w|^2) / |1-<w,z>|^2,
// which stays accurate arbitrarily close to the boundary.
inline BallPoint mobius(const BallPoint& z, const BallPoint& w) {
  check_same_dim(z.vec, w.vec);
  auto [pw, qw] = proj_pair(z.vec, w.vec);
  const cplx den = 1.0 - inner(w.vec, z.vec);
  const double root = std::sqrt(z.one_minus_sq());
  CVec out(z.dim());
  for (std::size_t d = 0; d < z.dim(); ++d)
    out[d] = (z.vec[d] - pw[d] - root * qw[d]) / den;
  const double one_minus = z.one_minus_sq() * w.one_minus_sq() / std::norm(den);
  const double image_abs = stable_abs(out);
  double g = one_minus / (1.0 + image_abs);
  if (!(g > 0.0)) g = std::numeric_limits<double>::min();
  if (g > 1.0) g = 1.0;
  return BallPoint{std::move(out), g};
}

// rho^2 via the identity above. Bitwise-symmetric in (z, w) and exactly 0
// for bit-identical arguments.
inline double rho_sq(const BallPoint& z, const BallPoint& w) {
  check_same_dim(z.vec, w.vec);
  if (z.vec == w.vec) return 0.0;
  const double den = std::norm(1.0 - inner(w.vec, z.vec));
  const double r2 = 1.0 - z.one_minus_sq() * w.one_minus_sq() / den;
  if (!(r2 > 0.0)) return 0.0;
  return r2 < 1.0 ? r2 : std::nextafter(1.0, 0.0);
}

// Pseudo-hyperbolic distance rho(z,w) = |sigma_z(w)| in [0,1).
inline double rho(const BallPoint& z, const BallPoint& w) {
  return std::sqrt(rho_sq(z, w));
}

// Bergman distance beta(z,w) = (1/2) log((1+rho)/(1-rho)) = atanh(rho).
inline double bergman_dist(const BallPoint& z, const BallPoint& w) {
  return std::atanh(rho(z, w));
}

// |z-w| / |1-<z,w>|; an upper bound for rho, with equality in dimension 1.
inline double rho_upper_bound(const BallPoint& z, const BallPoint& w) {
  check_same_dim(z.vec, w.vec);
  const double num = stable_abs(z.vec - w.vec);
  const double den = std::abs(1.0 - inner(z.vec, w.vec));
  return num / den;
}

// Euclidean realization of the pseudo-hyperbolic ball of radius r about a
// nonzero z: all w with |P_z(w)-c|^2/(r t)^2 + |Q_z(w)|^2/(r^2 t) < 1 where
//   c = (1-r^2) z / (1-r^2 |z|^2),  t = (1-|z|^2) / (1-r^2 |z|^2).
// For z = 0 this degenerates to the Euclidean ball of radius r (t = 1).
struct Ellipsoid {
  CVec axis;    // the direction z spanning [z]
  CVec center;  // c, lying on the ray through z
  double t = 1.0;
  double r = 0.0;

  bool contains(const BallPoint& w) const {
    auto [pw, qw] = proj_pair(axis, w.vec);
    const double a = stable_abs(pw - center);
    const double b = stable_abs(qw);
    const double rt = r * t;
    return a * a / (rt * rt) + b * b / (r * r * t) < 1.0;
  }
};

inline Ellipsoid ellipsoid_of(const BallPoint& z, double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("pseudo-hyperbolic radius must lie in (0, 1)");
  const double z2 = 1.0 - z.one_minus_sq();  // |z|^2
  const double den = 1.0 - r * r * z2;
  const double t = z.one_minus_sq() / den;
  const cplx s = (1.0 - r * r) / den;
  return Ellipsoid{z.vec, s * z.vec, t, r};
}

// Strict containment w in Delta(center, r) = {rho(center, .) < r}; points at
// distance exactly r are outside.
inline bool in_pseudo_ball(const BallPoint& w, const BallPoint& center, double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("pseudo-hyperbolic radius must lie in (0, 1)");
  return rho_sq(center, w) < r * r;
}

}  // namespace holoball
