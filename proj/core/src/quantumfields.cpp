#include "spintraj/quantumfields.hpp"

#include <cmath>

namespace spintraj {

namespace {

double qpotential_from_bundle(const FieldBundle& b, const PhysicalConstants& pc) {
  // Second form of Q: (hbar^2 / 4 m rho) ((grad rho)^2 / (2 rho) - lap rho).
  const double h2_4m = pc.hbar * pc.hbar / (4.0 * pc.mass);
  return h2_4m / b.rho * (0.5 * b.grad_rho.norm2() / b.rho - b.lap_rho);
}

Vec3 a_from_bundle(const FieldBundle& b, const SpinVector& spin) {
  return embed(b.grad_rho / b.rho).cross(spin.vector()) * -1.0;
}

double qprime_from_bundle(const FieldBundle& b, const SpinVector& spin,
                          const PhysicalConstants& pc) {
  const Vec3 a = a_from_bundle(b, spin);
  return qpotential_from_bundle(b, pc) + embed(b.grad_S).dot(a) / pc.mass -
         0.5 * a.norm2() / pc.mass;
}

FieldSample sample_from_bundle(const FieldBundle& b) {
  return {b.rho, b.grad_rho, b.grad_S, b.psi};
}

}  // namespace

double quantum_potential(const WaveModel& model, Vec2 x, double t) {
  return qpotential_from_bundle(model.bundle(x, t), model.constants());
}

double scalar_potential_qprime(const WaveModel& model, Vec2 x, double t, const SpinVector& spin) {
  return qprime_from_bundle(model.bundle(x, t), spin, model.constants());
}

Vec3 vector_potential_at(const WaveModel& model, Vec2 x, double t, const SpinVector& spin) {
  return a_from_bundle(model.bundle(x, t), spin);
}

Vec3 vector_potential_dt(const WaveModel& model, Vec2 x, double t, const SpinVector& spin) {
  const FieldBundle b = model.bundle(x, t);
  // d/dt grad(log rho) = grad(drho/dt)/rho - (drho/dt) grad(rho)/rho^2
  const Vec2 dglr_dt = b.grad_drho_dt / b.rho - b.grad_rho * (b.drho_dt / (b.rho * b.rho));
  return embed(dglr_dt).cross(spin.vector()) * -1.0;
}

EBFields fields_EB(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                   const FDStencil& stencil) {
  const double h = stencil.step(model, t);
  const PhysicalConstants& pc = model.constants();

  const FieldBundle bxp = model.bundle({x.x + h, x.y}, t);
  const FieldBundle bxm = model.bundle({x.x - h, x.y}, t);
  const FieldBundle byp = model.bundle({x.x, x.y + h}, t);
  const FieldBundle bym = model.bundle({x.x, x.y - h}, t);

  const Vec2 grad_qprime{
      (qprime_from_bundle(bxp, spin, pc) - qprime_from_bundle(bxm, spin, pc)) / (2.0 * h),
      (qprime_from_bundle(byp, spin, pc) - qprime_from_bundle(bym, spin, pc)) / (2.0 * h)};

  const Vec3 axp = a_from_bundle(bxp, spin);
  const Vec3 axm = a_from_bundle(bxm, spin);
  const Vec3 ayp = a_from_bundle(byp, spin);
  const Vec3 aym = a_from_bundle(bym, spin);

  // Planar curl (d/dz == 0).
  Vec3 curl;
  curl.x = (ayp.z - aym.z) / (2.0 * h);
  curl.y = -(axp.z - axm.z) / (2.0 * h);
  curl.z = (axp.y - axm.y) / (2.0 * h) - (ayp.x - aym.x) / (2.0 * h);

  EBFields out;
  out.E = embed(grad_qprime) * -1.0 - vector_potential_dt(model, x, t, spin);
  out.B = curl;
  return out;
}

Vec3 magnetic_field_closed_form(const WaveModel& model, Vec2 x, double t,
                                const SpinVector& spin) {
  const FieldBundle b = model.bundle(x, t);
  const Mat2 hess = hessian_log_rho(b);
  const Vec3 s = spin.vector();
  // -grad(grad(log rho).s) with planar fields: the dot picks the in-plane
  // spin components, the gradient is the Hessian applied to them.
  const Vec2 grad_dot{hess.xx * s.x + hess.xy * s.y, hess.xy * s.x + hess.yy * s.y};
  return embed(grad_dot) * -1.0 + s * hess.trace();
}

Vec3 lorentz_force(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                   const GuidanceMode& mode, const FDStencil& stencil) {
  const PhysicalConstants& pc = model.constants();
  if (!mode.spin_term) {
    const double h = stencil.step(model, t);
    const Vec2 grad_q{
        (quantum_potential(model, {x.x + h, x.y}, t) -
         quantum_potential(model, {x.x - h, x.y}, t)) / (2.0 * h),
        (quantum_potential(model, {x.x, x.y + h}, t) -
         quantum_potential(model, {x.x, x.y - h}, t)) / (2.0 * h)};
    return embed(grad_q) * -1.0;
  }
  const EBFields eb = fields_EB(model, x, t, spin, stencil);
  const FieldBundle b = model.bundle(x, t);
  const Vec2 v = velocity(sample_from_bundle(b), spin, mode, pc);
  return eb.E + embed(v).cross(eb.B);
}

ForceFieldSample force_field(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                             const GuidanceMode& mode, const FDStencil& stencil) {
  ForceFieldSample out;
  out.Q = quantum_potential(model, x, t);
  if (!mode.spin_term) {
    out.Qprime = out.Q;
    out.lorentz = lorentz_force(model, x, t, spin, mode, stencil);
    out.E = out.lorentz;
    out.B = {};
    return out;
  }
  out.Qprime = scalar_potential_qprime(model, x, t, spin);
  const EBFields eb = fields_EB(model, x, t, spin, stencil);
  out.E = eb.E;
  out.B = eb.B;
  const FieldBundle b = model.bundle(x, t);
  const Vec2 v = velocity(sample_from_bundle(b), spin, mode, model.constants());
  out.lorentz = out.E + embed(v).cross(out.B);
  return out;
}

double continuity_residual(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                           const GuidanceMode& mode, const FDStencil& stencil) {
  const double h = stencil.step(model, t);
  const PhysicalConstants& pc = model.constants();
  auto flux = [&](Vec2 p) {
    const FieldSample s = model.fields(p, t);
    return velocity(s, spin, mode, pc) * s.rho;
  };
  const double div = (flux({x.x + h, x.y}).x - flux({x.x - h, x.y}).x) / (2.0 * h) +
                     (flux({x.x, x.y + h}).y - flux({x.x, x.y - h}).y) / (2.0 * h);
  return model.bundle(x, t).drho_dt + div;
}

double hj_residual(const WaveModel& model, Vec2 x, double t, const FDStencil& /*stencil*/) {
  const FieldBundle b = model.bundle(x, t);
  const PhysicalConstants& pc = model.constants();
  return b.dS_dt + 0.5 * b.grad_S.norm2() / pc.mass + qpotential_from_bundle(b, pc);
}

Mat2 hessian_log_rho(const FieldBundle& b) {
  const double inv_rho = 1.0 / b.rho;
  const double inv_rho2 = inv_rho * inv_rho;
  return {b.hess_rho.xx * inv_rho - b.grad_rho.x * b.grad_rho.x * inv_rho2,
          b.hess_rho.xy * inv_rho - b.grad_rho.x * b.grad_rho.y * inv_rho2,
          b.hess_rho.yy * inv_rho - b.grad_rho.y * b.grad_rho.y * inv_rho2};
}

}  // namespace spintraj
