#pragma once

// Batched inner loops over structure-of-arrays point clouds: pseudo-hyperbolic
// ball masses and reciprocal kernel power sums. Scalar reference kernels plus
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
//
// All backends evaluate the identical per-element operation sequence (no FMA
// contraction), so comparison predicates and power chains agree bitwise across
// backends; only the order of the final accumulation differs.

#include <cstddef>
#include <cstdint>

namespace holoball::kernels {

// Denominators |1 - <z,a>|^2 are floored here before exponentiation; flooring
// events are counted and surfaced to callers.
inline constexpr double kDenFloor = 1e-28;  // (1e-14)^2

// Read-only view of a point cloud in component-major layout: component c of
// point i lives at coords[c * stride + i], c = 2d (real) or 2d+1 (imaginary)
// for dimension d. g2[i] = 1 - |z_i|^2. weights may be null (unit weights).
struct CloudView {
  std::size_t n_dim = 0;
  std::size_t count = 0;
  std::size_t stride = 0;
  const double* coords = nullptr;
  const double* g2 = nullptr;
  const double* weights = nullptr;
};

// Query center: interleaved coordinates (re, im) per dimension and 1-|a|^2.
struct Center {
  const double* coords = nullptr;  // 2 * n_dim doubles
  double g2 = 1.0;
};

struct MassCount {
  double mass = 0.0;
  std::uint64_t count = 0;
};

struct PowSum {
  double value = 0.0;    // sum_i w_i |1-<z_i,a>|^(-e)
  double value_sq = 0.0; // sum_i w_i |1-<z_i,a>|^(-2e)
  std::uint64_t floored = 0;
};

enum class Backend { scalar, avx2, neon };

// Active backend: HOLOBALL_SIMD={scalar,avx2,neon,auto} overrides CPU probing.
Backend active_backend();
const char* backend_name();

// Weighted mass and count of atoms with rho(a, z_i)^2 < r2 (strict).
MassCount ball_mass(const CloudView& cloud, const Center& a, double r2);

// sum_i w_i |1 - <z_i, a>|^(-exponent), with the squared-denominator floor.
PowSum kernel_pow_sum(const CloudView& cloud, const Center& a, double exponent);

// rho(a, z_i)^2 written to out[0..count).
void rho_sq_batch(const CloudView& cloud, const Center& a, double* out);

// Direct backend entry points (equivalence tests exercise these).
namespace scalar {
MassCount ball_mass(const CloudView&, const Center&, double r2);
PowSum kernel_pow_sum(const CloudView&, const Center&, double exponent);
void rho_sq_batch(const CloudView&, const Center&, double* out);
}  // namespace scalar

#if defined(HOLOBALL_BUILD_AVX2)
namespace avx2 {
MassCount ball_mass(const CloudView&, const Center&, double r2);
PowSum kernel_pow_sum(const CloudView&, const Center&, double exponent);
void rho_sq_batch(const CloudView&, const Center&, double* out);
}  // namespace avx2
#endif

#if defined(HOLOBALL_BUILD_NEON)
namespace neon {
MassCount ball_mass(const CloudView&, const Center&, double r2);
PowSum kernel_pow_sum(const CloudView&, const Center&, double exponent);
void rho_sq_batch(const CloudView&, const Center&, double* out);
}  // namespace neon
#endif

}  // namespace holoball::kernels
