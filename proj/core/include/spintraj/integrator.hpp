#ifndef SPINTRAJ_INTEGRATOR_HPP
#define SPINTRAJ_INTEGRATOR_HPP

#include <vector>

#include "spintraj/geometry.hpp"
#include "spintraj/guidance.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t0 = 0.0;
  double t1 = 1.0;
  double max_step = 0.0;             // 0: (t1 - t0) / 16
  double dense_output_stride = 0.0;  // 0: (t1 - t0) / 100
  bool watch_x_axis = true;          // detect sign changes of y (crossings of the x-axis)
  bool watch_y_axis = false;         // detect sign changes of x
  double subluminal_warn_threshold = 0.5;  // margin 1/2 marks speed = c

  void validate() const;
  double stride() const { return dense_output_stride > 0.0 ? dense_output_stride : (t1 - t0) / 100.0; }
  double step_cap() const { return max_step > 0.0 ? max_step : (t1 - t0) / 16.0; }
};

struct Event {
  enum class Kind { axis_crossing, node_abort, subluminal_warning };
  Kind kind = Kind::axis_crossing;
  int axis = 0;  // axis crossed: 0 = x-axis (y changed sign), 1 = y-axis
  double t = 0.0;
  Vec2 x;
  double margin = 0.0;  // subluminal warnings only
};

struct TrajectorySample {
  double t = 0.0;
  Vec2 x;
  Vec2 v;
  double speed = 0.0;
};

struct Trajectory {
  Vec2 initial;
  std::vector<TrajectorySample> samples;  // strictly increasing in t
  std::vector<Event> events;
  bool aborted = false;  // terminated early by a node abort
};

/// Integrates dx/dt = v(x, t) with an embedded Dormand-Prince 5(4) pair,
/// PI step-size control and fourth-order dense output. Samples are recorded
/// on the stride grid (plus the final time); axis crossings are located by
/// sign change and bisection of the dense output to 1e-10 time tolerance.
/// Entering a node region aborts the trajectory with a node-abort event and
/// returns the partial path.
Trajectory integrate_trajectory(const WaveModel& model, const SpinVector& spin,
                                const GuidanceMode& mode, Vec2 x0,
                                const IntegratorConfig& config);

/// Independent per-point integration; output order equals input order and
/// is deterministic regardless of parallel scheduling.
std::vector<Trajectory> integrate_ensemble(const WaveModel& model, const SpinVector& spin,
                                           const GuidanceMode& mode,
                                           const std::vector<Vec2>& points,
                                           const IntegratorConfig& config);

/// Exact orbit in the rest frame of a single symmetric packet of half-width
/// sigma0: x(t) = (x0 - y0 g t, y0 + x0 g t) with g = gamma(sigma0); the
/// velocity g*(-y0, x0) is constant and of magnitude gamma*|x0|.
struct OrbitPoint {
  Vec2 x;
  Vec2 v;
};
OrbitPoint closed_form_gaussian_orbit(Vec2 x0, double t, const PhysicalConstants& constants,
                                      double sigma0 = 1.0);

/// Galilean boost of a recorded trajectory: positions gain u*t, velocities
/// gain u. Axis crossings are re-located on the boosted path (cubic Hermite
/// between samples); node aborts are carried over; subluminal warnings are
/// dropped (frame-dependent diagnostic, not recomputable without the model).
Trajectory boost_trajectory(const Trajectory& traj, Vec2 u);

/// Rotation angle of a boosted packet trajectory: the angle between the
/// rest-frame direction b and the lab direction (gamma r0 b + u)/|...|,
/// where beta is the angle between b and u. r0 is measured in units of the
/// packet half-width sigma0. Tends to beta for u >> gamma r0.
double rotation_angle_alpha(double r0, double beta_rad, double u,
                            const PhysicalConstants& constants, double sigma0 = 1.0);

}  // namespace spintraj

#endif
