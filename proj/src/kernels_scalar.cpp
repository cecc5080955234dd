#include "kernels_detail.hpp"

namespace holoball::kernels::scalar {

MassCount ball_mass(const CloudView& c, const Center& a, double r2) {
  MassCount out;
  for (std::size_t i = 0; i < c.count; ++i) detail::accum_mass(c, a, r2, i, out);
  return out;
}

PowSum kernel_pow_sum(const CloudView& c, const Center& a, double exponent) {
  const detail::ExpPlan plan = detail::ExpPlan::make(exponent);
  PowSum out;
  for (std::size_t i = 0; i < c.count; ++i) detail::accum_pow(c, a, plan, i, out);
  return out;
}

void rho_sq_batch(const CloudView& c, const Center& a, double* out) {
  for (std::size_t i = 0; i < c.count; ++i) out[i] = detail::rho_sq_at(c, a, i);
}

}  // namespace holoball::kernels::scalar
