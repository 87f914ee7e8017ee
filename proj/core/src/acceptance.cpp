#include "spintraj/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spintraj/analysis.hpp"
#include "spintraj/ensemble.hpp"
#include "spintraj/parallel.hpp"
#include "spintraj/quantumfields.hpp"
#include "spintraj/rng.hpp"
#include "spintraj/scenarios.hpp"

namespace spintraj {

namespace {

const PhysicalConstants kDefaults{};

WaveModel symmetric_model() {
  return WaveModel::single({{0, 0}, {0, 0}, {1.0, 1.0}, {1.0, 0.0}}, kDefaults);
}

WaveModel product_model() {
  return WaveModel::single({{0, 0}, {0, 0}, {2.0, 1.0}, {1.0, 0.0}}, kDefaults);
}

WaveModel superposition_model(double separation) {
  const double a = 0.5 * separation;
  return WaveModel::superposition({{{0, a}, {0, 0}, {1.0, 1.0}, {1.0, 0.0}},
                                   {{0, -a}, {0, 0}, {1.0, 1.0}, {1.0, 0.0}}},
                                  kDefaults);
}

GateResult find_gate(const ScenarioResult& res, const std::string& name) {
  for (const auto& g : res.gates)
    if (g.name == name) return g;
  throw std::runtime_error("missing gate " + name);
}

CriterionResult criterion_inertial_motion() {
  ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  const ScenarioResult res = run_scenario(cfg);
  const GateResult orbit = find_gate(res, "orbit-match");
  const GateResult speed = find_gate(res, "constant-speed");
  std::ostringstream d;
  d << "orbit max rel err " << orbit.value << " (tol 1e-6), speed max rel drift " << speed.value
    << " (tol 1e-6)";
  return {1, "inertial motion vs closed-form orbits", orbit.pass && speed.pass, d.str()};
}

CriterionResult criterion_zero_force() {
  const WaveModel model = symmetric_model();
  const SpinVector spin = SpinVector::up(kDefaults);
  const GuidanceMode on{true};
  const double unit = 0.5;  // hbar^2 / (2 m sigma0^3)
  const double bound = 1e-5 * unit;
  double worst = 0.0;
  for (double t : {0.0, 2.0, 6.0}) {
    for (int ix = 0; ix < 21; ++ix) {
      for (int iy = 0; iy < 21; ++iy) {
        const Vec2 x{-3.0 + 6.0 * ix / 20.0, -3.0 + 6.0 * iy / 20.0};
        if (x.norm() > 3.0) continue;
        const Vec3 f = lorentz_force(model, x, t, spin, on, {});
        worst = std::max(worst, std::hypot(f.x, f.y));
      }
    }
  }
  std::ostringstream d;
  d << "max in-plane |E + v x B| = " << worst << " (bound " << bound << ")";
  return {2, "zero Lorentz-like force of the symmetric packet", worst < bound, d.str()};
}

CriterionResult criterion_mean_spin() {
  const SpinVector spin = SpinVector::up(kDefaults);
  std::ostringstream d;
  bool pass = true;
  int id = 0;
  for (const WaveModel& model : {symmetric_model(), superposition_model(5.0)}) {
    const MeanSpinResult r = mean_spin_angular_momentum(model, spin, 100000, 33001 + id);
    const double dev = std::abs(r.mean.z - 1.0);
    const bool ok = dev <= 3.0 * r.std_error.z;
    pass = pass && ok;
    d << (id == 0 ? "symmetric: " : "; superposition: ") << "Lz = " << r.mean.z << " +- "
      << r.std_error.z << (ok ? " (within 3 SE of hbar)" : " (OUTSIDE 3 SE)");
    ++id;
  }
  return {3, "mean spin angular momentum = hbar", pass, d.str()};
}

CriterionResult criterion_speed_distribution() {
  const WaveModel model = symmetric_model();
  const SpinVector spin = SpinVector::up(kDefaults);
  const GuidanceMode on{true};
  const int n = 10000;
  const std::vector<Vec2> pts = sample_density(model, n, 44001);
  IntegratorConfig cfg;
  cfg.t1 = 1.0;
  cfg.dense_output_stride = 0.25;
  cfg.watch_x_axis = false;
  std::vector<double> speeds(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const Trajectory tr = integrate_trajectory(model, spin, on, pts[i], cfg);
    double mean = 0.0;
    for (const auto& s : tr.samples) mean += s.speed;
    speeds[i] = mean / tr.samples.size();
  });
  const HistogramReport rep = speed_distribution_check(kDefaults, speeds);

  const double w = kDefaults.characteristic_speed(1.0);
  int tail = 0;
  for (double v : speeds)
    if (v > 3.0 * w) ++tail;
  const double frac = static_cast<double>(tail) / n;
  const double expect = std::exp(-4.5);
  const double sigma = std::sqrt(expect * (1.0 - expect) / n);
  const bool tail_ok = std::abs(frac - expect) <= 3.0 * sigma;

  std::ostringstream d;
  d << "KS p = " << rep.p_value << " (need > 0.01); tail fraction " << frac << " vs " << expect
    << " +- " << 3.0 * sigma;
  return {4, "Rayleigh speed distribution", rep.p_value > 0.01 && tail_ok, d.str()};
}

CriterionResult criterion_density_transport() {
  const WaveModel model = symmetric_model();
  const SpinVector spin = SpinVector::up(kDefaults);
  std::ostringstream d;
  bool pass = true;
  for (bool spin_on : {true, false}) {
    const TransportReport r =
        density_transport_check(model, spin, {spin_on}, 100000, 2.0, 55001);
    const bool ok = r.ks.p_value > 0.01 && r.abort_fraction < 1e-3;
    pass = pass && ok;
    d << (spin_on ? "spin on: " : "; spin off: ") << "KS p = " << r.ks.p_value
      << ", aborts = " << r.abort_fraction;
  }
  return {5, "density transport to gamma*t = 1 (both modes)", pass, d.str()};
}

CriterionResult criterion_galilean_boost() {
  const WaveModel model = symmetric_model();
  const SpinVector spin = SpinVector::up(kDefaults);
  const GuidanceMode on{true};
  const double w = kDefaults.characteristic_speed(1.0);

  // (a) Integrating the boosted model reproduces the boosted rest-frame
  //     trajectory pointwise.
  IntegratorConfig cfg;
  cfg.t1 = 4.0;
  cfg.dense_output_stride = 0.04;
  const Vec2 u{2.0 * w, 0.0};
  const WaveModel boosted_model = model.boosted(u);
  double worst_path = 0.0;
  for (const Vec2 x0 : uniform_contour(model, 1.0, 16)) {
    const Trajectory direct = integrate_trajectory(boosted_model, spin, on, x0, cfg);
    const Trajectory via_boost = boost_trajectory(integrate_trajectory(model, spin, on, x0, cfg), u);
    const std::size_t m = std::min(direct.samples.size(), via_boost.samples.size());
    for (std::size_t k = 0; k < m; ++k)
      worst_path = std::max(worst_path, (direct.samples[k].x - via_boost.samples[k].x).norm());
  }
  const bool path_ok = worst_path < 1e-6;

  // (b) Rotation-angle asymptotics at u = 100 w for r0 = sigma0.
  bool angles_ok = true;
  std::ostringstream d;
  d << "pointwise boost equivalence err " << worst_path << " (tol 1e-6); |alpha-beta| at u=100w:";
  for (double beta_deg : {0.0, 30.0, 90.0, 150.0}) {
    const double beta = beta_deg * kPi / 180.0;
    const double alpha = rotation_angle_alpha(1.0, beta, 100.0 * w, kDefaults);
    const double dev_deg = std::abs(alpha - beta) * 180.0 / kPi;
    angles_ok = angles_ok && dev_deg < 0.5;
    d << " " << beta_deg << "deg:" << dev_deg << "deg";
  }
  d << " (bound 0.5deg)";
  return {6, "Galilean boost covariance and rotation angles", path_ok && angles_ok, d.str()};
}

CriterionResult criterion_two_slit_dichotomy() {
  std::ostringstream d;
  bool pass = true;
  int counts[2][2] = {};
  for (int mode_idx = 0; mode_idx < 2; ++mode_idx) {
    const bool spin_on = mode_idx == 1;
    ScenarioConfig cfg = preset_by_name(spin_on ? "fig7-two-slit-spin" : "fig6-two-slit-nospin");
    for (int tol_idx = 0; tol_idx < 2; ++tol_idx) {
      if (tol_idx == 1) cfg.integrator.rel_tol *= 0.5;
      const ScenarioResult res = run_scenario(cfg);
      counts[mode_idx][tol_idx] = res.axis_crossings;
    }
  }
  pass = counts[0][0] == 0 && counts[0][1] == 0 && counts[1][0] >= 1 &&
         counts[1][0] == counts[1][1];
  d << "crossings spin-off " << counts[0][0] << "/" << counts[0][1] << " (need 0/0), spin-on "
    << counts[1][0] << "/" << counts[1][1] << " (need >= 1, equal at both tolerances)";
  return {7, "two-slit axis-crossing dichotomy", pass, d.str()};
}

CriterionResult criterion_fringe_recovery() {
  ScenarioConfig cfg = preset_by_name("fig7-two-slit-spin");
  const WaveModel model = cfg.model.build(cfg.constants);
  const SpinVector spin = SpinVector::up(cfg.constants);
  const GuidanceMode on{true};
  const std::vector<Vec2> pts = sample_density(model, 10000, 88001);
  IntegratorConfig icfg = cfg.integrator;
  icfg.watch_x_axis = false;
  icfg.dense_output_stride = icfg.t1;  // only the endpoint is needed
  std::vector<Trajectory> trajs(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    trajs[i] = integrate_trajectory(model, spin, on, pts[i], icfg);
  });
  const HistogramReport rep = fringe_profile(model, trajs, icfg.t1, 25, true);
  std::ostringstream d;
  d << "chi-square = " << rep.test_statistic << " (25 equal-probability bins), p = " << rep.p_value
    << " (need > 0.01)";
  return {8, "far-field fringe recovery from advected samples", rep.p_value > 0.01, d.str()};
}

CriterionResult criterion_residual_identities() {
  const SpinVector spin = SpinVector::up(kDefaults);
  SplitRng root(99001);
  double worst_cont = 0.0, worst_hj = 0.0;
  int model_idx = 0;
  for (const WaveModel& model :
       {symmetric_model(), product_model(), superposition_model(5.0)}) {
    for (int i = 0; i < 100; ++i) {
      SplitRng rng = root.substream(model_idx * 1000 + i);
      Vec2 x;
      double t = 0.0;
      for (;;) {
        t = rng.uniform(0.1, 4.0);
        const auto& packets = model.packets();
        const std::size_t k = packets.size() > 1 && rng.uniform01() > 0.5 ? 1 : 0;
        const GaussianPacket& p = packets[k];
        const auto [n1, n2] = rng.normal_pair();
        x = {p.center0.x + p.group_velocity.x * t +
                 sigma_of_t(p.sigma0.x, t, kDefaults) * n1,
             p.center0.y + p.group_velocity.y * t +
                 sigma_of_t(p.sigma0.y, t, kDefaults) * n2};
        if (model.density(x, t) > 1e-6 * model.peak_density_estimate(t)) break;
      }
      for (bool spin_on : {true, false})
        worst_cont = std::max(worst_cont,
                              std::abs(continuity_residual(model, x, t, spin, {spin_on}, {})));
      worst_hj = std::max(worst_hj, std::abs(hj_residual(model, x, t, {})));
    }
    ++model_idx;
  }
  std::ostringstream d;
  d << "max |continuity| = " << worst_cont << ", max |HJ| = " << worst_hj << " (bound 1e-5)";
  return {9, "continuity and Hamilton-Jacobi residuals", worst_cont < 1e-5 && worst_hj < 1e-5,
          d.str()};
}

CriterionResult criterion_force_consistency() {
  const WaveModel model = product_model();
  const SpinVector spin = SpinVector::up(kDefaults);
  IntegratorConfig cfg;
  cfg.t1 = 4.0;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-12;
  cfg.dense_output_stride = 0.05;
  cfg.watch_x_axis = false;
  const double f_ref = 0.5;  // hbar^2/(2 m sigma0y^3)
  std::ostringstream d;
  bool pass = true;
  for (bool spin_on : {true, false}) {
    const GuidanceMode mode{spin_on};
    double worst = 0.0;
    for (const Vec2 x0 : uniform_contour(model, 1.0, 5)) {
      const Trajectory tr = integrate_trajectory(model, spin, mode, x0, cfg);
      for (std::size_t k = 2; k + 2 < tr.samples.size(); ++k) {
        const auto& sm = tr.samples[k - 1];
        const auto& s0 = tr.samples[k];
        const auto& sp = tr.samples[k + 1];
        const double dt = s0.t - sm.t;
        const Vec2 accel = (sp.x - 2.0 * s0.x + sm.x) / (dt * dt);
        const Vec3 f = lorentz_force(model, s0.x, s0.t, spin, mode, {});
        const double err = (accel * kDefaults.mass - Vec2{f.x, f.y}).norm();
        const double tol = 1e-3 * std::max(std::hypot(f.x, f.y), 0.05 * f_ref);
        worst = std::max(worst, err / tol);
      }
    }
    pass = pass && worst < 1.0;
    d << (spin_on ? "spin on: " : "; spin off: ") << "max err/tol = " << worst;
  }
  return {10, "force law matches trajectory acceleration", pass, d.str()};
}

CriterionResult criterion_speed_ratio_bound() {
  const ScenarioResult res = run_scenario(preset_by_name("fig8-speed-ratio"));
  bool pass = true;
  std::ostringstream d;
  for (const char* g : {"speed-ratio-bound", "quiet-before-overlap", "spikes-in-overlap",
                        "subluminal-absolute"}) {
    const GateResult gate = find_gate(res, g);
    pass = pass && gate.pass;
    d << gate.name << " = " << gate.value << (gate.pass ? " (ok); " : " (FAIL); ");
  }
  return {11, "two-slit speed-ratio bound and spike localization", pass, d.str()};
}

}  // namespace

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return criterion_inertial_motion();
    case 2: return criterion_zero_force();
    case 3: return criterion_mean_spin();
    case 4: return criterion_speed_distribution();
    case 5: return criterion_density_transport();
    case 6: return criterion_galilean_boost();
    case 7: return criterion_two_slit_dichotomy();
    case 8: return criterion_fringe_recovery();
    case 9: return criterion_residual_identities();
    case 10: return criterion_force_consistency();
    case 11: return criterion_speed_ratio_bound();
    default: throw std::invalid_argument("run_criterion: id must be in [1, 11]");
  }
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
  std::vector<int> list = ids;
  if (list.empty())
    for (int i = 1; i <= kNumCriteria; ++i) list.push_back(i);
  std::vector<CriterionResult> results;
  for (int id : list) {
    const CriterionResult r = run_criterion(id);
    std::printf("[%s] criterion %2d: %s -- %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
    results.push_back(r);
  }
  return results;
}

}  // namespace spintraj
