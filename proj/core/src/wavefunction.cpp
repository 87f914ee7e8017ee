#include "spintraj/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spintraj {

namespace {

// Per-axis closed-form pieces of one packet's log-amplitude
//   g_a = -1/4 log(2 pi s0^2) - 1/2 log(u) - xi^2/(4 s0^2 u)
//         + i (m v (x - c) - m v^2 t / 2) / hbar
// with u = 1 + i gamma t and xi = x - c - v t. All derivatives of the
// packet are polynomials in these quantities times exp(g).
struct AxisEval {
  cplx g;        // log-amplitude contribution
  cplx dg;       // d g / dx
  cplx d2g;      // d^2 g / dx^2
  cplx dgdt;     // d g / dt
  cplx ddg_dt;   // d (dg/dx) / dt
};

AxisEval eval_axis(double x, double c, double v, double s0, const PhysicalConstants& pc,
                   double t, bool with_time_derivs) {
  const double gamma = pc.gamma(s0);
  const cplx u(1.0, gamma * t);
  const double xi = x - c - v * t;
  const double s2 = s0 * s0;
  const cplx inv2s2u = 1.0 / (2.0 * s2 * u);

  AxisEval out;
  out.g = -0.25 * std::log(2.0 * kPi * s2) - 0.5 * std::log(u) -
          xi * xi * inv2s2u * 0.5 +
          cplx(0.0, (pc.mass * v * (x - c) - 0.5 * pc.mass * v * v * t) / pc.hbar);
  out.dg = -xi * inv2s2u + cplx(0.0, pc.mass * v / pc.hbar);
  out.d2g = -inv2s2u;
  if (with_time_derivs) {
    const cplx inv_u = 1.0 / u;
    out.dgdt = cplx(0.0, -0.5 * gamma) * inv_u + xi * v * inv2s2u +
               cplx(0.0, gamma) * xi * xi * inv2s2u * inv_u * 0.5 +
               cplx(0.0, -0.5 * pc.mass * v * v / pc.hbar);
    out.ddg_dt = v * inv2s2u + cplx(0.0, gamma) * xi * inv2s2u * inv_u;
  }
  return out;
}

struct PsiDerivs {
  cplx psi;
  Vec2c grad;
  Mat2c hess;
  cplx dpsi_dt;
  Vec2c grad_dpsi_dt;
};

PsiDerivs eval_gaussian(const std::vector<GaussianPacket>& packets,
                        const PhysicalConstants& pc, Vec2 x, double t, int order) {
  PsiDerivs out;
  const bool with_t = order >= 2;
  for (const auto& p : packets) {
    const AxisEval ax = eval_axis(x.x, p.center0.x, p.group_velocity.x, p.sigma0.x, pc, t, with_t);
    const AxisEval ay = eval_axis(x.y, p.center0.y, p.group_velocity.y, p.sigma0.y, pc, t, with_t);
    const cplx psi = p.weight * std::exp(ax.g + ay.g);
    out.psi += psi;
    if (order >= 1) {
      out.grad.x += psi * ax.dg;
      out.grad.y += psi * ay.dg;
    }
    if (order >= 2) {
      out.hess.xx += psi * (ax.dg * ax.dg + ax.d2g);
      out.hess.yy += psi * (ay.dg * ay.dg + ay.d2g);
      out.hess.xy += psi * (ax.dg * ay.dg);
      const cplx gt = ax.dgdt + ay.dgdt;
      out.dpsi_dt += psi * gt;
      out.grad_dpsi_dt.x += psi * (ax.ddg_dt + gt * ax.dg);
      out.grad_dpsi_dt.y += psi * (ay.ddg_dt + gt * ay.dg);
    }
  }
  return out;
}

}  // namespace

double sigma_of_t(double sigma0, double t, const PhysicalConstants& constants) {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma_of_t: sigma0 must be > 0");
  const double gt = constants.gamma(sigma0) * t;
  return sigma0 * std::sqrt(1.0 + gt * gt);
}

WaveModel WaveModel::single(const GaussianPacket& packet, const PhysicalConstants& constants) {
  return superposition({packet}, constants, true);
}

WaveModel WaveModel::superposition(std::vector<GaussianPacket> packets,
                                   const PhysicalConstants& constants, bool normalize) {
  if (packets.empty())
    throw std::invalid_argument("WaveModel: at least one packet required");
  constants.validate();
  for (const auto& p : packets) p.validate();
  WaveModel m;
  m.kind_ = Kind::gaussian;
  m.packets_ = std::move(packets);
  m.constants_ = constants;
  if (normalize) {
    const double total = m.total_probability();
    if (!(total > 0.0))
      throw std::invalid_argument("WaveModel: superposition is not normalizable");
    const double scale = 1.0 / std::sqrt(total);
    for (auto& p : m.packets_) p.weight *= scale;
  }
  return m;
}

WaveModel WaveModel::plane_wave(Vec2 wavevector, const PhysicalConstants& constants) {
  constants.validate();
  WaveModel m;
  m.kind_ = Kind::plane_wave;
  m.wavevector_ = wavevector;
  m.constants_ = constants;
  return m;
}

cplx WaveModel::psi(Vec2 x, double t) const {
  if (kind_ == Kind::plane_wave) {
    const double omega = constants_.hbar * wavevector_.norm2() / (2.0 * constants_.mass);
    return std::exp(cplx(0.0, wavevector_.dot(x) - omega * t));
  }
  return eval_gaussian(packets_, constants_, x, t, 0).psi;
}

double WaveModel::density(Vec2 x, double t) const {
  return std::norm(psi(x, t));
}

FieldSample WaveModel::fields(Vec2 x, double t) const {
  FieldSample out;
  if (kind_ == Kind::plane_wave) {
    out.psi = psi(x, t);
    out.rho = 1.0;
    out.grad_S = wavevector_ * constants_.hbar;
    return out;
  }
  const PsiDerivs d = eval_gaussian(packets_, constants_, x, t, 1);
  out.psi = d.psi;
  out.rho = std::norm(d.psi);
  if (out.rho < node_floor(t)) throw NodeRegionError(x, t, out.rho);
  const cplx conj_psi = std::conj(d.psi);
  out.grad_rho = {2.0 * std::real(conj_psi * d.grad.x), 2.0 * std::real(conj_psi * d.grad.y)};
  out.grad_S = {constants_.hbar * std::imag(d.grad.x / d.psi),
                constants_.hbar * std::imag(d.grad.y / d.psi)};
  return out;
}

FieldBundle WaveModel::bundle(Vec2 x, double t) const {
  FieldBundle out;
  if (kind_ == Kind::plane_wave) {
    out.psi = psi(x, t);
    out.rho = 1.0;
    out.grad_S = wavevector_ * constants_.hbar;
    out.dS_dt = -constants_.hbar * constants_.hbar * wavevector_.norm2() / (2.0 * constants_.mass);
    return out;
  }
  const PsiDerivs d = eval_gaussian(packets_, constants_, x, t, 2);
  out.psi = d.psi;
  out.rho = std::norm(d.psi);
  if (out.rho < node_floor(t)) throw NodeRegionError(x, t, out.rho);
  const cplx cp = std::conj(d.psi);
  out.grad_rho = {2.0 * std::real(cp * d.grad.x), 2.0 * std::real(cp * d.grad.y)};
  out.hess_rho.xx = 2.0 * (std::real(std::conj(d.grad.x) * d.grad.x) + std::real(cp * d.hess.xx));
  out.hess_rho.yy = 2.0 * (std::real(std::conj(d.grad.y) * d.grad.y) + std::real(cp * d.hess.yy));
  out.hess_rho.xy = 2.0 * (std::real(std::conj(d.grad.x) * d.grad.y) + std::real(cp * d.hess.xy));
  out.lap_rho = out.hess_rho.trace();
  out.drho_dt = 2.0 * std::real(cp * d.dpsi_dt);
  out.grad_drho_dt = {
      2.0 * (std::real(std::conj(d.grad.x) * d.dpsi_dt) + std::real(cp * d.grad_dpsi_dt.x)),
      2.0 * (std::real(std::conj(d.grad.y) * d.dpsi_dt) + std::real(cp * d.grad_dpsi_dt.y))};
  out.grad_S = {constants_.hbar * std::imag(d.grad.x / d.psi),
                constants_.hbar * std::imag(d.grad.y / d.psi)};
  out.dS_dt = constants_.hbar * std::imag(d.dpsi_dt / d.psi);
  return out;
}

cplx packet_axis_amplitude(const GaussianPacket& p, int axis, double coord, double t,
                           const PhysicalConstants& constants) {
  const double c = axis == 0 ? p.center0.x : p.center0.y;
  const double v = axis == 0 ? p.group_velocity.x : p.group_velocity.y;
  const double s0 = axis == 0 ? p.sigma0.x : p.sigma0.y;
  const AxisEval ax = eval_axis(coord, c, v, s0, constants, t, false);
  return std::exp(ax.g);
}

cplx packet_axis_overlap(const GaussianPacket& a, const GaussianPacket& b, int axis,
                         const PhysicalConstants& constants) {
  const double cj = axis == 0 ? a.center0.x : a.center0.y;
  const double vj = axis == 0 ? a.group_velocity.x : a.group_velocity.y;
  const double sj = axis == 0 ? a.sigma0.x : a.sigma0.y;
  const double ck = axis == 0 ? b.center0.x : b.center0.y;
  const double vk = axis == 0 ? b.group_velocity.x : b.group_velocity.y;
  const double sk = axis == 0 ? b.sigma0.x : b.sigma0.y;
  const double m_over_h = constants.mass / constants.hbar;
  // Gaussian integral of conj(phi_a) phi_b at t = 0:
  // int exp(-alpha x^2 + beta x + delta) = sqrt(pi/alpha) exp(beta^2/(4 alpha) + delta).
  const double alpha = 0.25 / (sj * sj) + 0.25 / (sk * sk);
  const cplx beta(cj / (2.0 * sj * sj) + ck / (2.0 * sk * sk), m_over_h * (vk - vj));
  const cplx delta(-cj * cj / (4.0 * sj * sj) - ck * ck / (4.0 * sk * sk),
                   m_over_h * (vj * cj - vk * ck));
  const double pref = std::pow(2.0 * kPi * sj * sj, -0.25) * std::pow(2.0 * kPi * sk * sk, -0.25);
  return pref * std::sqrt(kPi / alpha) * std::exp(beta * beta / (4.0 * alpha) + delta);
}

double WaveModel::total_probability() const {
  if (kind_ == Kind::plane_wave) return 1.0;
  // Sum_jk conj(w_j) w_k <phi_j|phi_k>, constant in time.
  cplx total(0.0, 0.0);
  for (const auto& pj : packets_) {
    for (const auto& pk : packets_) {
      total += std::conj(pj.weight) * pk.weight * packet_axis_overlap(pj, pk, 0, constants_) *
               packet_axis_overlap(pj, pk, 1, constants_);
    }
  }
  return std::real(total);
}

double WaveModel::marginal_density(int axis, double coord, double t) const {
  if (kind_ != Kind::gaussian)
    throw std::invalid_argument("marginal_density: Gaussian models only");
  const int other = 1 - axis;
  cplx total(0.0, 0.0);
  for (const auto& pj : packets_) {
    for (const auto& pk : packets_) {
      const cplx aj = packet_axis_amplitude(pj, axis, coord, t, constants_);
      const cplx ak = packet_axis_amplitude(pk, axis, coord, t, constants_);
      total += std::conj(pj.weight * aj) * (pk.weight * ak) *
               packet_axis_overlap(pj, pk, other, constants_);
    }
  }
  return std::real(total);
}

double WaveModel::peak_density_estimate(double t) const {
  if (kind_ == Kind::plane_wave) return 1.0;
  double amp = 0.0;
  for (const auto& p : packets_) {
    const double sx = sigma_of_t(p.sigma0.x, t, constants_);
    const double sy = sigma_of_t(p.sigma0.y, t, constants_);
    amp += std::abs(p.weight) /
           std::sqrt(2.0 * kPi * std::sqrt(p.sigma0.x * sx * p.sigma0.y * sy));
  }
  return amp * amp;
}

double WaveModel::node_floor(double t) const {
  return kNodeFloorRel * peak_density_estimate(t);
}

double WaveModel::characteristic_length(double t) const {
  if (kind_ == Kind::plane_wave) {
    const double k = wavevector_.norm();
    return k > 1.0 ? 1.0 / k : 1.0;
  }
  double len = std::numeric_limits<double>::max();
  for (const auto& p : packets_) {
    len = std::min(len, sigma_of_t(p.sigma0.x, t, constants_));
    len = std::min(len, sigma_of_t(p.sigma0.y, t, constants_));
  }
  return len;
}

WaveModel WaveModel::boosted(Vec2 u) const {
  if (kind_ == Kind::plane_wave) {
    // k -> k + m u / hbar shifts the phase gradient by m u.
    WaveModel m = *this;
    m.wavevector_ = wavevector_ + u * (constants_.mass / constants_.hbar);
    return m;
  }
  WaveModel m = *this;
  for (auto& p : m.packets_) {
    p.group_velocity += u;
    p.weight *= std::exp(cplx(0.0, constants_.mass * u.dot(p.center0) / constants_.hbar));
  }
  return m;
}

}  // namespace spintraj
