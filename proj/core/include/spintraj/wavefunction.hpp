#ifndef SPINTRAJ_WAVEFUNCTION_HPP
#define SPINTRAJ_WAVEFUNCTION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "spintraj/geometry.hpp"
#include "spintraj/units.hpp"

namespace spintraj {

/// Raised when a field evaluation lands below the node floor, where the
/// guidance velocity j/rho is ill-conditioned. Integrators catch this to
/// abort a trajectory; direct callers should treat it as "do not evaluate
/// here".
class NodeRegionError : public std::runtime_error {
 public:
  NodeRegionError(Vec2 x, double t, double rho)
      : std::runtime_error("field evaluation inside node region"),
        position(x), time(t), density(rho) {}
  Vec2 position;
  double time;
  double density;
};

/// One free two-dimensional Gaussian packet with independent half-widths
/// per axis. The packet is L2-normalized on its own; `weight` scales and
/// phases it inside a superposition.
struct GaussianPacket {
  Vec2 center0;               // center at t = 0
  Vec2 group_velocity;        // constant drift u of the packet center
  Vec2 sigma0{1.0, 1.0};      // per-axis half-widths at t = 0
  cplx weight{1.0, 0.0};

  void validate() const {
    if (!(sigma0.x > 0.0) || !(sigma0.y > 0.0))
      throw std::invalid_argument("GaussianPacket: sigma0 components must be > 0");
    if (!(std::abs(weight) > 0.0))
      throw std::invalid_argument("GaussianPacket: |weight| must be > 0");
  }
};

/// Pointwise field bundle consumed by the guidance law: density, its
/// gradient, the phase gradient, and the raw amplitude. rho = |psi|^2 and
/// grad_S is computed as hbar*Im(grad psi / psi), which is single-valued
/// away from nodes (no phase unwrapping).
struct FieldSample {
  double rho = 0.0;
  Vec2 grad_rho;
  Vec2 grad_S;
  cplx psi;
};

/// Everything the quantum-potential and residual evaluators need at one
/// spacetime point, all from closed-form packet derivatives.
struct FieldBundle {
  cplx psi;
  double rho = 0.0;
  Vec2 grad_rho;
  Mat2 hess_rho;
  double lap_rho = 0.0;
  double drho_dt = 0.0;
  Vec2 grad_drho_dt;
  Vec2 grad_S;
  double dS_dt = 0.0;
};

/// Half-width of a spreading packet: sigma(t) = sigma0*sqrt(1 + gamma^2 t^2)
/// with gamma = hbar/(2 m sigma0^2).
double sigma_of_t(double sigma0, double t, const PhysicalConstants& constants);

/// 1D factor of a packet along one axis (0 = x, 1 = y); the packet value is
/// the product of its two axis factors times the weight.
cplx packet_axis_amplitude(const GaussianPacket& p, int axis, double coord, double t,
                           const PhysicalConstants& constants);

/// L2 inner product of the 1D axis factors of two packets. Invariant in
/// time (unitary evolution), evaluated in closed form at t = 0.
cplx packet_axis_overlap(const GaussianPacket& a, const GaussianPacket& b, int axis,
                         const PhysicalConstants& constants);

/// Analytic wavefunction model: either a weighted superposition of free
/// Gaussian packets or a unit plane wave (test fixture). All evaluations
/// are exact closed forms, valid for any t (including t < 0).
class WaveModel {
 public:
  enum class Kind { gaussian, plane_wave };

  static WaveModel single(const GaussianPacket& packet, const PhysicalConstants& constants);
  /// Builds a superposition; when `normalize` is set the weights are scaled
  /// so that the total probability integrates to one. The guidance law is
  /// insensitive to this constant (it only sees log-derivatives).
  static WaveModel superposition(std::vector<GaussianPacket> packets,
                                 const PhysicalConstants& constants, bool normalize = true);
  static WaveModel plane_wave(Vec2 wavevector, const PhysicalConstants& constants);

  Kind kind() const { return kind_; }
  const std::vector<GaussianPacket>& packets() const { return packets_; }
  Vec2 wavevector() const { return wavevector_; }
  const PhysicalConstants& constants() const { return constants_; }

  cplx psi(Vec2 x, double t) const;
  FieldSample fields(Vec2 x, double t) const;   // throws NodeRegionError below floor
  FieldBundle bundle(Vec2 x, double t) const;   // throws NodeRegionError below floor

  /// Density evaluated without the node-floor check (never throws).
  double density(Vec2 x, double t) const;

  /// Exact marginal density along one axis (0 = x, 1 = y): the integral of
  /// rho over the other coordinate, from the closed-form axis overlaps.
  /// Gaussian models only.
  double marginal_density(int axis, double coord, double t) const;

  /// Analytic integral of rho over the plane for the current weights.
  double total_probability() const;

  /// Cheap analytic upper estimate of the peak density at time t.
  double peak_density_estimate(double t) const;

  /// Densities below this are treated as a node region.
  double node_floor(double t) const;

  /// Smallest instantaneous packet width, used to scale FD steps; for the
  /// plane wave it falls back to max(1, 1/|k|).
  double characteristic_length(double t) const;

  /// Galilean boost: adds u to every packet velocity and rotates each
  /// weight by exp(i m u.c_k / hbar) so that the result equals the boost
  /// operator applied to this model: rho'(x, t) = rho(x - u t, t) and
  /// grad_S' (x + u t, t) = grad_S(x, t) + m u.
  WaveModel boosted(Vec2 u) const;

  static constexpr double kNodeFloorRel = 1e-14;

 private:
  WaveModel() = default;

  Kind kind_ = Kind::gaussian;
  std::vector<GaussianPacket> packets_;
  Vec2 wavevector_;
  PhysicalConstants constants_;
};

}  // namespace spintraj

#endif
