#ifndef SPINTRAJ_GUIDANCE_HPP
#define SPINTRAJ_GUIDANCE_HPP

#include "spintraj/geometry.hpp"
#include "spintraj/units.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

/// Fixed spin eigenvector of magnitude hbar/2. Default along +z, which is
/// what every planar scenario uses; other unit directions are representable
/// but rejected by 2D scenario validation (they induce out-of-plane motion).
struct SpinVector {
  Vec3 direction{0.0, 0.0, 1.0};
  double magnitude = 0.5;  // hbar/2 in the model's units

  static SpinVector up(const PhysicalConstants& constants) {
    return {{0.0, 0.0, 1.0}, 0.5 * constants.hbar};
  }
  static SpinVector down(const PhysicalConstants& constants) {
    return {{0.0, 0.0, -1.0}, 0.5 * constants.hbar};
  }
  static SpinVector along(Vec3 dir, const PhysicalConstants& constants);

  Vec3 vector() const { return direction * magnitude; }
};

/// Toggle between the spin-extended velocity m v = grad S - A and the
/// phase-gradient-only law m v = grad S.
struct GuidanceMode {
  bool spin_term = true;
};

/// Spin vector potential A = -grad(log rho) x s. Solenoidal, orthogonal to
/// grad rho, and in-plane whenever the spin is along z.
Vec3 vector_potential(const FieldSample& sample, const SpinVector& spin);

/// Guidance velocity (in-plane components). With the spin term enabled this
/// is (grad S - A)/m; disabled, grad S / m.
Vec2 velocity(const FieldSample& sample, const SpinVector& spin, const GuidanceMode& mode,
              const PhysicalConstants& constants);

/// Ratio |grad S| / ((hbar/2)|grad log rho|); the spin correction to the
/// current is negligible when this is >> 1. Returns +infinity where
/// grad rho vanishes (the spin term is exactly zero there).
double spin_significance(const FieldSample& sample, const PhysicalConstants& constants);

/// Non-relativistic validity margin
///   (1/2) sqrt(|j|^2/(c^2 rho^2) + ((1/(m c)) grad(log rho).s)^2);
/// values << 1 certify that the implied particle speed is subluminal.
double subluminal_margin(const FieldSample& sample, const SpinVector& spin,
                         const PhysicalConstants& constants);

}  // namespace spintraj

#endif
