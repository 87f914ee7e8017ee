#ifndef SPINTRAJ_QUANTUMFIELDS_HPP
#define SPINTRAJ_QUANTUMFIELDS_HPP

#include "spintraj/geometry.hpp"
#include "spintraj/guidance.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

/// Central second-order finite-difference stencil. The absolute step is
/// step_rel times the model's instantaneous characteristic length, so the
/// truncation error tracks the packet scale as it spreads.
struct FDStencil {
  double step_rel = 1e-4;

  double step(const WaveModel& model, double t) const {
    return step_rel * model.characteristic_length(t);
  }
};

/// Scalar and vector quantum-potential data at one spacetime point.
/// With the spin term off, Qprime == Q, B == 0 and lorentz == -grad Q.
struct ForceFieldSample {
  double Q = 0.0;
  double Qprime = 0.0;
  Vec3 E;
  Vec3 B;
  Vec3 lorentz;
};

/// Q = -(hbar^2 / 2m) lap(sqrt rho)/sqrt rho, evaluated through the
/// closed-form packet Hessians (no finite differences).
double quantum_potential(const WaveModel& model, Vec2 x, double t);

/// Q' = Q + (1/m) grad S . A - A^2 / 2m; reduces to Q where A vanishes.
double scalar_potential_qprime(const WaveModel& model, Vec2 x, double t, const SpinVector& spin);

/// A at a point, from the analytic field bundle.
Vec3 vector_potential_at(const WaveModel& model, Vec2 x, double t, const SpinVector& spin);

/// dA/dt, analytic (mixed space-time derivatives of the packets).
Vec3 vector_potential_dt(const WaveModel& model, Vec2 x, double t, const SpinVector& spin);

/// Electric-like and magnetic-like fields E = -grad Q' - dA/dt, B = curl A.
/// grad Q' and curl A are central differences of analytically computed
/// Q' and A; dA/dt is analytic.
struct EBFields {
  Vec3 E;
  Vec3 B;
};
EBFields fields_EB(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                   const FDStencil& stencil = {});

/// Closed-form B = -grad(grad(log rho).s) + s lap(log rho); the independent
/// route used to cross-check the curl.
Vec3 magnetic_field_closed_form(const WaveModel& model, Vec2 x, double t, const SpinVector& spin);

/// Quantum force on the trajectory at the local guidance velocity:
/// E + v x B with the spin term, -grad Q without it.
Vec3 lorentz_force(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                   const GuidanceMode& mode, const FDStencil& stencil = {});

/// Full force-field bundle at a point.
ForceFieldSample force_field(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                             const GuidanceMode& mode, const FDStencil& stencil = {});

/// Residual of d rho/dt + div(rho v) with the mode-selected current; bounded
/// by FD truncation error for any valid model, and identical for both modes
/// (the spin current is divergence-free).
double continuity_residual(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                           const GuidanceMode& mode, const FDStencil& stencil = {});

/// Residual of dS/dt + (grad S)^2 / 2m + Q (free evolution); an identity of
/// the dynamics, evaluated fully analytically.
double hj_residual(const WaveModel& model, Vec2 x, double t, const FDStencil& stencil = {});

/// Hessian of log rho, used by the closed-form B route and diagnostics.
Mat2 hessian_log_rho(const FieldBundle& b);

}  // namespace spintraj

#endif
