#include "spintraj/guidance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spintraj {

SpinVector SpinVector::along(Vec3 dir, const PhysicalConstants& constants) {
  const double n = dir.norm();
  if (!(n > 0.0)) throw std::invalid_argument("SpinVector: direction must be nonzero");
  return {dir / n, 0.5 * constants.hbar};
}

Vec3 vector_potential(const FieldSample& sample, const SpinVector& spin) {
  const Vec3 grad_log_rho = embed(sample.grad_rho / sample.rho);
  return (grad_log_rho.cross(spin.vector())) * -1.0;
}

Vec2 velocity(const FieldSample& sample, const SpinVector& spin, const GuidanceMode& mode,
              const PhysicalConstants& constants) {
  Vec2 momentum = sample.grad_S;
  if (mode.spin_term) {
    const Vec3 a = vector_potential(sample, spin);
    momentum = momentum - a.xy();
  }
  return momentum / constants.mass;
}

double spin_significance(const FieldSample& sample, const PhysicalConstants& constants) {
  const double spin_scale = 0.5 * constants.hbar * (sample.grad_rho / sample.rho).norm();
  if (spin_scale == 0.0) return std::numeric_limits<double>::infinity();
  return sample.grad_S.norm() / spin_scale;
}

double subluminal_margin(const FieldSample& sample, const SpinVector& spin,
                         const PhysicalConstants& constants) {
  const double c = constants.c_ratio;
  // j/rho is the full guidance velocity including the spin term.
  const Vec3 grad_log_rho = embed(sample.grad_rho / sample.rho);
  const Vec3 momentum = embed(sample.grad_S) + grad_log_rho.cross(spin.vector());
  const double speed = momentum.norm() / constants.mass;
  const double spin_term = grad_log_rho.dot(spin.vector()) / (constants.mass * c);
  return 0.5 * std::sqrt(speed * speed / (c * c) + spin_term * spin_term);
}

}  // namespace spintraj
