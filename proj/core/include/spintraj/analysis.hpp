#ifndef SPINTRAJ_ANALYSIS_HPP
#define SPINTRAJ_ANALYSIS_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spintraj/guidance.hpp"
#include "spintraj/integrator.hpp"
#include "spintraj/stats.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

class InsufficientSamplesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HistogramReport {
  std::vector<double> bin_edges;
  std::vector<double> counts;
  double test_statistic = 0.0;
  double p_value = std::numeric_limits<double>::quiet_NaN();  // NaN: no test attached
};

/// Classical-limit monitors: the spin-significance ratio (>> 1 when the
/// spin correction is negligible) and the quantum-force magnitude relative
/// to hbar^2/(2 m L^3) at the model's t = 0 scale L.
struct LimitMonitor {
  double spin_ratio = 0.0;
  double qforce_scale = 0.0;
};

struct MeanSpinResult {
  Vec3 mean;
  Vec3 std_error;
  int n = 0;
};

struct TransportReport {
  HistogramReport histogram;
  KsResult ks;
  double abort_fraction = 0.0;
};

/// Hermite interpolation of a recorded trajectory (clamped to its span).
Vec2 position_at(const Trajectory& traj, double t);
Vec2 velocity_at(const Trajectory& traj, double t);

/// KS test of trajectory speeds against the Rayleigh law with scale
/// w = gamma sigma0, the speed distribution implied by density-weighted
/// initial conditions in a symmetric packet. Needs >= 100 samples.
HistogramReport speed_distribution_check(const PhysicalConstants& constants,
                                         const std::vector<double>& speeds, double sigma0 = 1.0);

/// Monte-Carlo estimate of the mean spin orbital angular momentum
/// <x cross (grad(log rho) cross s)> over rho at t = 0; equals 2 s for any
/// normalized model.
MeanSpinResult mean_spin_angular_momentum(const WaveModel& model, const SpinVector& spin,
                                          int n_samples, std::uint64_t seed);

/// Advects n samples drawn from rho_0 to t_final and KS-tests the empirical
/// radial (symmetric packet) or x-marginal (product packet) CDF against the
/// analytic law at t_final. Reports the node-abort fraction.
TransportReport density_transport_check(const WaveModel& model, const SpinVector& spin,
                                        const GuidanceMode& mode, int n_samples, double t_final,
                                        std::uint64_t seed,
                                        const IntegratorConfig* base_config = nullptr);

/// Histogram of trajectory y-positions at a snapshot time, binned at equal
/// probability under the analytic y-marginal. With `statistical_test` the
/// counts are chi-square-tested against that marginal (valid for
/// density-sampled initial conditions; canonical ring ensembles are
/// weighted and get the histogram only).
HistogramReport fringe_profile(const WaveModel& model, const std::vector<Trajectory>& trajectories,
                               double t_snapshot, int bins, bool statistical_test);

LimitMonitor limit_monitors(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                            const PhysicalConstants& constants);

}  // namespace spintraj

#endif
