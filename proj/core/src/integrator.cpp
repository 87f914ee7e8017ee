#include "spintraj/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spintraj/parallel.hpp"

namespace spintraj {

namespace {

// Dormand-Prince 5(4) tableau (FSAL), with the standard fourth-order dense
// output coefficients.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

enum class EvalStatus { ok, node };

struct FieldEval {
  EvalStatus status = EvalStatus::ok;
  Vec2 v;
  double rho = 0.0;
  FieldSample sample;
};

struct VelocityField {
  const WaveModel& model;
  const SpinVector& spin;
  const GuidanceMode& mode;

  FieldEval operator()(Vec2 x, double t) const {
    FieldEval out;
    try {
      out.sample = model.fields(x, t);
      out.rho = out.sample.rho;
      out.v = velocity(out.sample, spin, mode, model.constants());
    } catch (const NodeRegionError& e) {
      out.status = EvalStatus::node;
      out.rho = e.density;
    }
    return out;
  }
};

struct DenseStep {
  double t0 = 0.0, h = 0.0;
  Vec2 r1, r2, r3, r4, r5;

  Vec2 at(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
  }
};

double error_norm(Vec2 err, Vec2 y0, Vec2 y1, double atol, double rtol) {
  const double skx = atol + rtol * std::max(std::abs(y0.x), std::abs(y1.x));
  const double sky = atol + rtol * std::max(std::abs(y0.y), std::abs(y1.y));
  const double ex = err.x / skx;
  const double ey = err.y / sky;
  return std::sqrt(0.5 * (ex * ex + ey * ey));
}

double initial_step(const VelocityField& f, Vec2 y, Vec2 f0, double t, double cap,
                    double atol, double rtol) {
  auto rms = [&](Vec2 v, Vec2 ref) {
    const double skx = atol + rtol * std::abs(ref.x);
    const double sky = atol + rtol * std::abs(ref.y);
    return std::sqrt(0.5 * ((v.x / skx) * (v.x / skx) + (v.y / sky) * (v.y / sky)));
  };
  const double d0 = rms(y, y);
  const double d1 = rms(f0, y);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, cap);
  const FieldEval e1s = f(y + h0 * f0, t + h0);
  double d2 = 0.0;
  if (e1s.status == EvalStatus::ok) d2 = rms(e1s.v - f0, y) / h0;
  const double dm = std::max(d1, d2);
  double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return std::min({100.0 * h0, h1, cap});
}

// Locates a zero of component `axis_comp` of the dense output within
// [ta, tb] by bisection to 1e-10 time tolerance.
double bisect_crossing(const DenseStep& dense, int axis_comp, double ta, double tb) {
  auto comp = [&](double t) {
    const Vec2 p = dense.at(t);
    return axis_comp == 0 ? p.y : p.x;  // axis 0 = x-axis: y changes sign
  };
  double fa = comp(ta);
  for (int it = 0; it < 200 && (tb - ta) > 1e-10; ++it) {
    const double tm = 0.5 * (ta + tb);
    const double fm = comp(tm);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      ta = tm;
      fa = fm;
    } else {
      tb = tm;
    }
  }
  return 0.5 * (ta + tb);
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
  if (!(t1 > t0)) throw std::invalid_argument("IntegratorConfig: t1 must exceed t0");
  if (max_step < 0.0 || dense_output_stride < 0.0)
    throw std::invalid_argument("IntegratorConfig: steps must be nonnegative");
}

Trajectory integrate_trajectory(const WaveModel& model, const SpinVector& spin,
                                const GuidanceMode& mode, Vec2 x0,
                                const IntegratorConfig& config) {
  config.validate();
  const VelocityField field{model, spin, mode};
  const PhysicalConstants& pc = model.constants();
  const double span = config.t1 - config.t0;
  const double stride = config.stride();
  const double cap = config.step_cap();
  const double h_min = std::max(1e-13 * span, 8.0 * std::numeric_limits<double>::epsilon());

  Trajectory traj;
  traj.initial = x0;

  double t = config.t0;
  Vec2 y = x0;

  FieldEval cur = field(y, t);
  if (cur.status == EvalStatus::node) {
    traj.events.push_back({Event::Kind::node_abort, 0, t, y, 0.0});
    traj.aborted = true;
    return traj;
  }

  long next_record = 0;
  auto record_time = [&](long k) { return config.t0 + k * stride; };
  auto record_sample = [&](double ts, Vec2 xs, const Vec2* known_v) {
    Vec2 v;
    if (known_v) {
      v = *known_v;
    } else {
      const FieldEval e = field(xs, ts);
      v = e.status == EvalStatus::ok ? e.v : Vec2{};
    }
    traj.samples.push_back({ts, xs, v, v.norm()});
  };
  record_sample(t, y, &cur.v);
  ++next_record;

  bool warned_subluminal = false;
  auto check_subluminal = [&](const FieldSample& s, double ts, Vec2 xs) {
    if (warned_subluminal) return;
    const double margin = subluminal_margin(s, spin, pc);
    if (margin > config.subluminal_warn_threshold) {
      traj.events.push_back({Event::Kind::subluminal_warning, 0, ts, xs, margin});
      warned_subluminal = true;
    }
  };
  check_subluminal(cur.sample, t, y);

  Vec2 k1 = cur.v;
  double h = initial_step(field, y, k1, t, cap, config.abs_tol, config.rel_tol);
  double facold = 1e-4;
  bool last_rejected = false;
  long steps = 0;
  constexpr long kMaxSteps = 200'000'000;

  const double t_end = config.t1;
  while (t < t_end - 1e-14 * span) {
    if (++steps > kMaxSteps) throw std::runtime_error("integrate_trajectory: step limit exceeded");
    h = std::min({h, cap, t_end - t});
    if (h < h_min) h = h_min;

    // Stage evaluations. A node at any probe shrinks the step; at minimum
    // step size the trajectory is aborted where it stands.
    bool node_hit = false;
    bool soft_hit = false;
    Vec2 k2, k3, k4, k5, k6, k7, y1;
    const double soft_floor = 10.0 * model.node_floor(t);
    auto probe = [&](Vec2 xs, double ts, Vec2& out_v, FieldSample* samp = nullptr) {
      const FieldEval e = field(xs, ts);
      if (e.status == EvalStatus::node) {
        node_hit = true;
        return false;
      }
      if (e.rho < soft_floor && e.rho < cur.rho) soft_hit = true;
      out_v = e.v;
      if (samp) *samp = e.sample;
      return true;
    };

    FieldSample end_sample;
    bool ok = probe(y + h * (a21 * k1), t + c2 * h, k2) &&
              probe(y + h * (a31 * k1 + a32 * k2), t + c3 * h, k3) &&
              probe(y + h * (a41 * k1 + a42 * k2 + a43 * k3), t + c4 * h, k4) &&
              probe(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t + c5 * h, k5) &&
              probe(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t + h, k6);
    if (ok) {
      y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      ok = probe(y1, t + h, k7, &end_sample);
    }

    if (!ok || soft_hit) {
      if (h <= 4.0 * h_min) {
        traj.events.push_back({Event::Kind::node_abort, 0, t, y, 0.0});
        traj.aborted = true;
        return traj;
      }
      h *= 0.25;
      last_rejected = true;
      continue;
    }

    const Vec2 err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = error_norm(err_vec, y, y1, config.abs_tol, config.rel_tol);

    constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
    constexpr double facc1 = 5.0, facc2 = 0.1;  // 1/fac1, 1/fac2
    const double fac11 = std::pow(std::max(err, 1e-32), expo1);

    if (err > 1.0 && h > 4.0 * h_min) {
      h = h / std::min(facc1, fac11 / safe);
      last_rejected = true;
      continue;
    }

    // Accepted. Dense output for this step.
    DenseStep dense;
    dense.t0 = t;
    dense.h = h;
    dense.r1 = y;
    dense.r2 = y1 - y;
    dense.r3 = h * k1 - dense.r2;
    dense.r4 = dense.r2 - h * k7 - dense.r3;
    dense.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    // Axis crossings: scan the half-steps so a double crossing inside one
    // step is still caught.
    auto scan_axis = [&](int axis_comp) {
      auto comp_of = [&](Vec2 p) { return axis_comp == 0 ? p.y : p.x; };
      const double tm = t + 0.5 * h;
      const double v0 = comp_of(y), vm = comp_of(dense.at(tm)), v1 = comp_of(y1);
      auto handle = [&](double ta, double tb, double fa, double fb) {
        if (fa == 0.0) return;  // segment starts on the axis (not a crossing)
        if (fb == 0.0) {        // lands exactly on the axis
          traj.events.push_back({Event::Kind::axis_crossing, axis_comp, tb, dense.at(tb), 0.0});
          return;
        }
        if ((fa < 0.0) == (fb < 0.0)) return;
        const double tc = bisect_crossing(dense, axis_comp, ta, tb);
        traj.events.push_back({Event::Kind::axis_crossing, axis_comp, tc, dense.at(tc), 0.0});
      };
      handle(t, tm, v0, vm);
      handle(tm, t + h, vm, v1);
    };
    if (config.watch_x_axis) scan_axis(0);
    if (config.watch_y_axis) scan_axis(1);

    // Stride-grid samples inside (t, t+h].
    while (true) {
      const double tr = record_time(next_record);
      if (tr > t + h + 1e-12 * span || tr > t_end + 1e-12 * span) break;
      record_sample(std::min(tr, t_end), dense.at(std::min(tr, t_end)), nullptr);
      ++next_record;
    }

    t += h;
    y = y1;
    k1 = k7;
    cur.rho = end_sample.rho;
    cur.v = k7;
    check_subluminal(end_sample, t, y);

    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double h_new = h / fac;
    if (last_rejected) h_new = std::min(h_new, h);
    facold = std::max(err, 1e-4);
    last_rejected = false;
    h = h_new;
  }

  if (traj.samples.empty() || traj.samples.back().t < t_end - 1e-9 * span) {
    const FieldEval e = field(y, t_end);
    const Vec2 v = e.status == EvalStatus::ok ? e.v : Vec2{};
    traj.samples.push_back({t_end, y, v, v.norm()});
  }
  return traj;
}

std::vector<Trajectory> integrate_ensemble(const WaveModel& model, const SpinVector& spin,
                                           const GuidanceMode& mode,
                                           const std::vector<Vec2>& points,
                                           const IntegratorConfig& config) {
  std::vector<Trajectory> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    out[i] = integrate_trajectory(model, spin, mode, points[i], config);
  });
  return out;
}

OrbitPoint closed_form_gaussian_orbit(Vec2 x0, double t, const PhysicalConstants& constants,
                                      double sigma0) {
  const double g = constants.gamma(sigma0);
  return {{x0.x - x0.y * g * t, x0.y + x0.x * g * t}, {-x0.y * g, x0.x * g}};
}

Trajectory boost_trajectory(const Trajectory& traj, Vec2 u) {
  if (u.x == 0.0 && u.y == 0.0) return traj;
  Trajectory out;
  out.aborted = traj.aborted;
  out.initial = traj.initial;
  out.samples.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    const Vec2 x = s.x + u * s.t;
    const Vec2 v = s.v + u;
    out.samples.push_back({s.t, x, v, v.norm()});
  }
  for (const auto& e : traj.events) {
    if (e.kind == Event::Kind::node_abort)
      out.events.push_back({e.kind, e.axis, e.t, e.x + u * e.t, 0.0});
  }

  // Re-locate axis crossings on the boosted path with cubic Hermite
  // interpolation between samples.
  auto hermite = [](double s, double p0, double m0, double p1, double m1, double dt) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * dt * m0 + (-2 * s3 + 3 * s2) * p1 +
           (s3 - s2) * dt * m1;
  };
  for (int axis = 0; axis < 2; ++axis) {
    for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
      const auto& s0 = out.samples[i];
      const auto& s1 = out.samples[i + 1];
      const double p0 = axis == 0 ? s0.x.y : s0.x.x;
      const double p1 = axis == 0 ? s1.x.y : s1.x.x;
      const double m0 = axis == 0 ? s0.v.y : s0.v.x;
      const double m1 = axis == 0 ? s1.v.y : s1.v.x;
      if (p0 == 0.0) continue;  // segment starts on the axis
      if (p1 == 0.0) {          // sample sits exactly on the axis
        out.events.push_back({Event::Kind::axis_crossing, axis, s1.t, s1.x, 0.0});
        continue;
      }
      if ((p0 < 0.0) == (p1 < 0.0)) continue;
      const double dt = s1.t - s0.t;
      double sa = 0.0, sb = 1.0, fa = p0;
      for (int it = 0; it < 200 && (sb - sa) * dt > 1e-10; ++it) {
        const double sm = 0.5 * (sa + sb);
        const double fm = hermite(sm, p0, m0, p1, m1, dt);
        if ((fa <= 0.0) == (fm <= 0.0)) {
          sa = sm;
          fa = fm;
        } else {
          sb = sm;
        }
      }
      const double sc = 0.5 * (sa + sb);
      const double tc = s0.t + sc * dt;
      const Vec2 xc{hermite(sc, s0.x.x, s0.v.x, s1.x.x, s1.v.x, dt),
                    hermite(sc, s0.x.y, s0.v.y, s1.x.y, s1.v.y, dt)};
      out.events.push_back({Event::Kind::axis_crossing, axis, tc, xc, 0.0});
    }
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  return out;
}

double rotation_angle_alpha(double r0, double beta_rad, double u,
                            const PhysicalConstants& constants, double sigma0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("rotation_angle_alpha: r0 must be > 0");
  const double g = constants.gamma(sigma0);
  const Vec2 b_hat{std::cos(beta_rad), std::sin(beta_rad)};  // u along +x
  const Vec2 sum{g * r0 * b_hat.x + u, g * r0 * b_hat.y};
  const double n = sum.norm();
  if (n == 0.0) return 0.0;
  const double c = std::clamp(b_hat.dot(sum) / n, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace spintraj
