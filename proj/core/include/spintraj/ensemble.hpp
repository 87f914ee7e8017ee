#ifndef SPINTRAJ_ENSEMBLE_HPP
#define SPINTRAJ_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "spintraj/geometry.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Concentric rings with density-weighted point counts: ring k receives
/// round(reference_count * rho(r_k)/rho(reference_radius)) points, equally
/// spaced in angle starting at angle zero.
struct RingSpec {
  std::vector<double> radii;
  double reference_radius = 1.0;
  int reference_count = 20;

  void validate() const;
};

struct RingEnsemble {
  std::vector<Vec2> points;
  std::vector<int> counts;           // per ring; 0 marks a dropped ring
  std::vector<std::size_t> dropped;  // ring indices whose count rounded to 0
};

/// Density-weighted ring ensemble around `center`. `radial_density` is the
/// t = 0 radial profile of one symmetric packet. Rings whose count rounds
/// to zero are dropped and reported, not an error.
RingEnsemble canonical_rings(const RingSpec& spec,
                             const std::function<double(double)>& radial_density, Vec2 center);

/// Equally spaced points on a constant-density contour of a single-packet
/// model: a circle of radius `scale` for the symmetric packet, the ellipse
/// with semi-axes (sigma0x, sigma0y) * scale / min(sigma0) otherwise (so
/// `scale` is the distance along the narrow axis). Superpositions and plane
/// waves have no closed-form contour parametrization here.
std::vector<Vec2> uniform_contour(const WaveModel& model, double scale, int count);

/// Equally spaced points on a circle, angle origin at zero.
std::vector<Vec2> circle_points(Vec2 center, double radius, int count);

/// i.i.d. samples from the t = 0 density. Exact per-axis normals for a
/// single packet; rejection sampling against the packet-mixture envelope
/// for superpositions. Deterministic given the seed, with independent
/// per-index substreams (parallel generation cannot reorder results).
std::vector<Vec2> sample_density(const WaveModel& model, int count, std::uint64_t seed);

// Declarative ensemble descriptions used by scenario configs.
struct CanonicalRingsSpec {
  RingSpec rings;
  std::vector<Vec2> centers;  // one ring family per center (per slit)
};
struct UniformContourSpec {
  double scale = 1.0;
  int count = 16;
};
struct DensitySampleSpec {
  int count = 1000;
  std::uint64_t seed = 1;
};
using EnsembleSpec = std::variant<CanonicalRingsSpec, UniformContourSpec, DensitySampleSpec>;

/// Materializes an ensemble spec against a model (contours use the first
/// packet's shape; rings use each center in turn).
std::vector<Vec2> build_ensemble(const EnsembleSpec& spec, const WaveModel& model);

}  // namespace spintraj

#endif
