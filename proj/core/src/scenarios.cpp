#include "spintraj/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spintraj/format.hpp"
#include "spintraj/quantumfields.hpp"
#include "spintraj/version.hpp"

namespace spintraj {

namespace {

Vec2 mirror_y(Vec2 v) { return {v.x, -v.y}; }

double max_speed(const std::vector<Trajectory>& trajs) {
  double m = 0.0;
  for (const auto& tr : trajs)
    for (const auto& s : tr.samples) m = std::max(m, s.speed);
  return m;
}

int count_events(const std::vector<Trajectory>& trajs, Event::Kind kind, int axis = -1) {
  int n = 0;
  for (const auto& tr : trajs)
    for (const auto& e : tr.events)
      if (e.kind == kind && (axis < 0 || e.axis == axis)) ++n;
  return n;
}

// Onset of packet overlap in a two-slit model: sigma(t) reaches a/3, the
// point where the 3-sigma tails of the two packets meet.
double overlap_onset_time(const ScenarioConfig& cfg) {
  const double a = 0.5 * cfg.model.separation;
  const double s0 = cfg.model.sigma0y;
  if (a <= 3.0 * s0) return 0.0;
  const double g = cfg.constants.gamma(s0);
  const double gt = std::sqrt((a / (3.0 * s0)) * (a / (3.0 * s0)) - 1.0);
  return gt / g;
}

Vec2 nearest_slit_center(const ScenarioConfig& cfg, Vec2 p) {
  const double a = 0.5 * cfg.model.separation;
  return p.y >= 0.0 ? Vec2{0.0, a} : Vec2{0.0, -a};
}

struct GateContext {
  const ScenarioConfig& cfg;
  const WaveModel& model;
  const SpinVector& spin;
  const GuidanceMode& mode;
  const std::vector<Vec2>& points;
  const std::vector<Trajectory>& trajectories;
};

GateResult gate_orbit_match(const GateContext& ctx) {
  double worst = 0.0;
  for (const auto& tr : ctx.trajectories) {
    for (const auto& s : tr.samples) {
      const OrbitPoint ref = closed_form_gaussian_orbit(tr.initial, s.t, ctx.cfg.constants);
      const double scale = std::max(ref.x.norm(), 1.0);
      worst = std::max(worst, (s.x - ref.x).norm() / scale);
    }
  }
  return {"orbit-match", worst < 1e-6, worst, 1e-6, "max relative deviation from closed-form orbit"};
}

GateResult gate_constant_speed(const GateContext& ctx) {
  const double g = ctx.cfg.constants.gamma(1.0);
  double worst = 0.0;
  for (const auto& tr : ctx.trajectories) {
    const double ref = g * tr.initial.norm();
    for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.speed - ref) / ref);
  }
  return {"constant-speed", worst < 1e-6, worst, 1e-6, "max relative speed drift vs gamma*r0"};
}

GateResult gate_linearity(const GateContext& ctx) {
  double worst = 0.0;
  for (const auto& tr : ctx.trajectories) {
    if (tr.samples.size() < 3) continue;
    const Vec2 a = tr.samples.front().x;
    const Vec2 b = tr.samples.back().x;
    const Vec2 chord = b - a;
    const double len = chord.norm();
    if (len == 0.0) continue;
    double path = 0.0;
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
      path += (tr.samples[i].x - tr.samples[i - 1].x).norm();
    for (const auto& s : tr.samples) {
      const Vec2 d = s.x - a;
      const double perp = std::abs(chord.x * d.y - chord.y * d.x) / len;
      worst = std::max(worst, perp / path);
    }
  }
  return {"linearity", worst < 1e-6, worst, 1e-6, "max perpendicular deviation / path length"};
}

GateResult gate_rotation_angles(const GateContext& ctx) {
  // Families are stored consecutively: multiples[f] covers points.size()
  // trajectories starting at f * points.size().
  const double w = ctx.cfg.constants.characteristic_speed(1.0);
  const std::size_t n = ctx.points.size();
  double worst = 0.0;
  for (std::size_t f = 0; f < ctx.cfg.boost_multiples.size(); ++f) {
    const double u = ctx.cfg.boost_multiples[f] * w;
    for (std::size_t i = 0; i < n; ++i) {
      const Trajectory& tr = ctx.trajectories[f * n + i];
      if (tr.samples.size() < 2) continue;
      const Vec2 x0 = tr.initial;
      const double r0 = x0.norm();
      const Vec2 b_hat = Vec2{-x0.y, x0.x} / r0;
      const Vec2 dir = tr.samples.back().x - tr.samples.front().x;
      const double alpha_measured =
          std::acos(std::clamp(b_hat.dot(dir) / dir.norm(), -1.0, 1.0));
      const double beta = std::acos(std::clamp(b_hat.x, -1.0, 1.0));  // u along +x
      const double alpha_ref = rotation_angle_alpha(r0, beta, u, ctx.cfg.constants);
      worst = std::max(worst, std::abs(alpha_measured - alpha_ref));
    }
  }
  return {"rotation-angles", worst < 1e-6, worst, 1e-6,
          "max |measured - vector-sum| rotation angle (rad)"};
}

GateResult gate_boost_equivalence(const GateContext& ctx) {
  // Compare one boosted family against boosting the rest-frame trajectories.
  const double w = ctx.cfg.constants.characteristic_speed(1.0);
  const std::size_t n = ctx.points.size();
  const std::size_t f = ctx.cfg.boost_multiples.size() / 2;
  const Vec2 u{ctx.cfg.boost_multiples[f] * w, 0.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Trajectory rest =
        integrate_trajectory(ctx.model, ctx.spin, ctx.mode, ctx.points[i], ctx.cfg.integrator);
    const Trajectory boosted = boost_trajectory(rest, u);
    const Trajectory& direct = ctx.trajectories[f * n + i];
    const std::size_t m = std::min(boosted.samples.size(), direct.samples.size());
    for (std::size_t k = 0; k < m; ++k)
      worst = std::max(worst, (boosted.samples[k].x - direct.samples[k].x).norm());
  }
  return {"boost-equivalence", worst < 1e-6, worst, 1e-6,
          "max |boosted rest-frame path - directly integrated boosted model|"};
}

GateResult gate_force_decay(const GateContext& ctx) {
  const double g = ctx.cfg.constants.gamma(1.0);
  const std::vector<double> gts{3.0, 4.0, 5.0, 6.0};
  std::vector<double> maxima;
  for (double gt : gts) {
    const double t = gt / g;
    double m = 0.0;
    for (int ix = -4; ix <= 4; ++ix) {
      for (int iy = -4; iy <= 4; ++iy) {
        const Vec2 x{0.5 * ix * ctx.cfg.model.sigma0x, 0.5 * iy * ctx.cfg.model.sigma0y};
        m = std::max(m, lorentz_force(ctx.model, x, t, ctx.spin, ctx.mode, {}).norm());
      }
    }
    maxima.push_back(m);
  }
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < maxima.size(); ++i)
    worst_ratio = std::max(worst_ratio, maxima[i] / maxima[i - 1]);
  std::ostringstream detail;
  detail << "grid max |force| at gamma*t in {3,4,5,6}:";
  for (double m : maxima) detail << " " << m;
  return {"force-decay", worst_ratio < 1.0, worst_ratio, 1.0, detail.str()};
}

GateResult gate_chirality(const GateContext& ctx) {
  // Integrate from the exactly mirrored ensemble in both modes; the spin-off
  // flow is mirror-equivariant (asymmetry at machine precision) while the
  // spin term breaks the symmetry macroscopically.
  std::vector<Vec2> mirrored(ctx.points.size());
  for (std::size_t i = 0; i < ctx.points.size(); ++i) mirrored[i] = mirror_y(ctx.points[i]);

  auto asymmetry = [&](const GuidanceMode& mode, const std::vector<Trajectory>& base) {
    const std::vector<Trajectory> mt =
        integrate_ensemble(ctx.model, ctx.spin, mode, mirrored, ctx.cfg.integrator);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const std::size_t m = std::min(base[i].samples.size(), mt[i].samples.size());
      for (std::size_t k = 0; k < m; ++k)
        worst = std::max(worst, (mirror_y(base[i].samples[k].x) - mt[i].samples[k].x).norm());
    }
    return worst;
  };

  const GuidanceMode off{false};
  const std::vector<Trajectory> base_off =
      integrate_ensemble(ctx.model, ctx.spin, off, ctx.points, ctx.cfg.integrator);
  const double asym_off = asymmetry(off, base_off);
  const double asym_on = asymmetry(ctx.mode, ctx.trajectories);

  std::ostringstream detail;
  detail << "mirror asymmetry: spin-off " << asym_off << ", spin-on " << asym_on;
  const bool pass = asym_off < 1e-7 && asym_on > 0.1;
  return {"chirality-asymmetry", pass, asym_on, 0.1, detail.str()};
}

// Axis-crossing phenomenology is tied to the guidance mode, not the preset:
// the phase-gradient flow cannot cross the symmetry axis, the spin-extended
// flow does. Keying the gate on the active mode keeps a spin-toggled run of
// either two-slit preset meaningful.
GateResult gate_crossing_dichotomy(const GateContext& ctx) {
  const int n = count_events(ctx.trajectories, Event::Kind::axis_crossing, 0);
  if (ctx.mode.spin_term)
    return {"crossing-dichotomy", n >= 1, static_cast<double>(n), 1.0,
            "x-axis crossings with the spin term (need >= 1)"};
  return {"crossing-dichotomy", n == 0, static_cast<double>(n), 0.0,
          "x-axis crossings without the spin term (need 0)"};
}

GateResult gate_subluminal(const GateContext& ctx) {
  const int n = count_events(ctx.trajectories, Event::Kind::subluminal_warning);
  return {"subluminal", n == 0, static_cast<double>(n), 0.0, "subluminal warnings recorded"};
}

GateResult gate_subluminal_absolute(const GateContext& ctx) {
  const double ratio = max_speed(ctx.trajectories) / ctx.cfg.constants.c_ratio;
  return {"subluminal-absolute", ratio < 1.0, ratio, 1.0, "max |v| / c"};
}

GateResult gate_node_free(const GateContext& ctx) {
  const int n = count_events(ctx.trajectories, Event::Kind::node_abort);
  return {"node-free", n == 0, static_cast<double>(n), 0.0, "node aborts recorded"};
}

GateResult gate_speed_ratio_bound(const GateContext& ctx) {
  const Vec2 u = ctx.cfg.model.group_velocity;
  const double unorm = u.norm();
  double worst = 0.0;
  for (const auto& tr : ctx.trajectories)
    for (const auto& s : tr.samples) worst = std::max(worst, (s.v - u).norm() / unorm);
  return {"speed-ratio-bound", worst < 0.05, worst, 0.05,
          "max rest-frame speed over group speed"};
}

GateResult gate_quiet_before_overlap(const GateContext& ctx) {
  const Vec2 u = ctx.cfg.model.group_velocity;
  const double unorm = u.norm();
  const double g = ctx.cfg.constants.gamma(ctx.cfg.model.sigma0y);
  const double onset = overlap_onset_time(ctx.cfg);
  double worst = 0.0;
  for (const auto& tr : ctx.trajectories) {
    const double r0 = (tr.initial - nearest_slit_center(ctx.cfg, tr.initial)).norm();
    const double baseline = g * r0 / unorm;
    for (const auto& s : tr.samples) {
      if (s.t >= onset) break;
      const double ratio = (s.v - u).norm() / unorm;
      worst = std::max(worst, std::abs(ratio - baseline) / baseline);
    }
  }
  std::ostringstream detail;
  detail << "max relative ratio deviation before overlap onset t=" << onset;
  return {"quiet-before-overlap", worst < 0.1, worst, 0.1, detail.str()};
}

GateResult gate_spikes_in_overlap(const GateContext& ctx) {
  const Vec2 u = ctx.cfg.model.group_velocity;
  const double onset = overlap_onset_time(ctx.cfg);
  double earliest_peak = std::numeric_limits<double>::max();
  for (const auto& tr : ctx.trajectories) {
    double best = -1.0, t_best = 0.0;
    for (const auto& s : tr.samples) {
      const double ratio = (s.v - u).norm();
      if (ratio > best) {
        best = ratio;
        t_best = s.t;
      }
    }
    earliest_peak = std::min(earliest_peak, t_best);
  }
  std::ostringstream detail;
  detail << "earliest per-trajectory speed-ratio peak vs overlap onset t=" << onset;
  return {"spikes-in-overlap", earliest_peak >= onset, earliest_peak, onset, detail.str()};
}

GateResult run_gate(const std::string& name, const GateContext& ctx) {
  if (name == "orbit-match") return gate_orbit_match(ctx);
  if (name == "constant-speed") return gate_constant_speed(ctx);
  if (name == "linearity") return gate_linearity(ctx);
  if (name == "rotation-angles") return gate_rotation_angles(ctx);
  if (name == "boost-equivalence") return gate_boost_equivalence(ctx);
  if (name == "force-decay") return gate_force_decay(ctx);
  if (name == "chirality-asymmetry") return gate_chirality(ctx);
  if (name == "crossing-dichotomy") return gate_crossing_dichotomy(ctx);
  if (name == "subluminal") return gate_subluminal(ctx);
  if (name == "subluminal-absolute") return gate_subluminal_absolute(ctx);
  if (name == "node-free") return gate_node_free(ctx);
  if (name == "speed-ratio-bound") return gate_speed_ratio_bound(ctx);
  if (name == "quiet-before-overlap") return gate_quiet_before_overlap(ctx);
  if (name == "spikes-in-overlap") return gate_spikes_in_overlap(ctx);
  throw ValidationError("gates", "unknown gate '" + name + "'");
}

}  // namespace

WaveModel ModelSpec::build(const PhysicalConstants& constants) const {
  if (plane) return WaveModel::plane_wave(wavevector, constants);
  if (separation > 0.0) {
    const double a = 0.5 * separation;
    GaussianPacket up{{0.0, a}, group_velocity, {sigma0x, sigma0y}, {1.0, 0.0}};
    GaussianPacket down{{0.0, -a}, group_velocity, {sigma0x, sigma0y}, {1.0, 0.0}};
    return WaveModel::superposition({up, down}, constants);
  }
  GaussianPacket p{{0.0, 0.0}, group_velocity, {sigma0x, sigma0y}, {1.0, 0.0}};
  return WaveModel::single(p, constants);
}

void ScenarioConfig::validate() const {
  constants.validate();
  if (!model.plane) {
    if (!(model.sigma0x > 0.0)) throw ValidationError("model.sigma0x", "must be > 0");
    if (!(model.sigma0y > 0.0)) throw ValidationError("model.sigma0y", "must be > 0");
    if (model.separation < 0.0) throw ValidationError("two-slit.separation", "must be >= 0");
  }
  try {
    integrator.validate();
  } catch (const std::exception& e) {
    throw ValidationError("integrator", e.what());
  }
  if (snapshot_time > integrator.t1)
    throw ValidationError("analysis.snapshot-time", "beyond integration horizon");
  if (fringe_bins < 2) throw ValidationError("analysis.fringe-bins", "need >= 2 bins");
  if (const auto* rings = std::get_if<CanonicalRingsSpec>(&ensemble)) {
    try {
      rings->rings.validate();
    } catch (const std::exception& e) {
      throw ValidationError("ensemble.rings", e.what());
    }
  } else if (const auto* contour = std::get_if<UniformContourSpec>(&ensemble)) {
    if (contour->count < 1) throw ValidationError("ensemble.count", "must be >= 1");
    if (!(contour->scale > 0.0)) throw ValidationError("ensemble.contour-scale", "must be > 0");
  } else if (const auto* ds = std::get_if<DensitySampleSpec>(&ensemble)) {
    if (ds->count < 1) throw ValidationError("ensemble.sample-count", "must be >= 1");
  }
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::to_kv() const {
  std::vector<std::pair<std::string, std::string>> kv;
  auto put = [&](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  auto putd = [&](const std::string& k, double v) { put(k, format_double(v)); };
  put("scenario", name);
  put("spin", spin_on ? "on" : "off");
  put("spin-direction", spin_up ? "+z" : "-z");
  put("seed", std::to_string(seed));
  put("units", units.si ? "si" : "dimensionless");
  putd("constants.hbar", constants.hbar);
  putd("constants.mass", constants.mass);
  putd("constants.c-ratio", constants.c_ratio);
  if (units.si) {
    putd("si.sigma0", units.sigma0_m);
    putd("si.mass", units.mass_kg);
    putd("si.hbar", units.hbar_Js);
  }
  put("model.kind", model.plane ? "plane" : (model.separation > 0.0 ? "two-slit" : "packet"));
  if (model.plane) {
    putd("model.kx", model.wavevector.x);
    putd("model.ky", model.wavevector.y);
  } else {
    putd("model.sigma0x", model.sigma0x);
    putd("model.sigma0y", model.sigma0y);
    putd("model.separation", model.separation);
    putd("model.group-speed-x", model.group_velocity.x);
    putd("model.group-speed-y", model.group_velocity.y);
  }
  if (const auto* rings = std::get_if<CanonicalRingsSpec>(&ensemble)) {
    std::string radii;
    for (double r : rings->rings.radii) radii += (radii.empty() ? "" : " ") + format_double(r);
    put("ensemble.kind", "canonical-rings");
    put("ensemble.radii", radii);
    putd("ensemble.reference-radius", rings->rings.reference_radius);
    put("ensemble.reference-count", std::to_string(rings->rings.reference_count));
    put("ensemble.centers", std::to_string(rings->centers.size()));
  } else if (const auto* contour = std::get_if<UniformContourSpec>(&ensemble)) {
    put("ensemble.kind", "uniform-contour");
    putd("ensemble.contour-scale", contour->scale);
    put("ensemble.count", std::to_string(contour->count));
  } else if (const auto* ds = std::get_if<DensitySampleSpec>(&ensemble)) {
    put("ensemble.kind", "density-sample");
    put("ensemble.sample-count", std::to_string(ds->count));
    put("ensemble.sample-seed", std::to_string(ds->seed));
  }
  if (!boost_multiples.empty()) {
    std::string ms;
    for (double m : boost_multiples) ms += (ms.empty() ? "" : " ") + format_double(m);
    put("boost-multiples", ms);
  }
  putd("integrator.rel-tol", integrator.rel_tol);
  putd("integrator.abs-tol", integrator.abs_tol);
  putd("integrator.t0", integrator.t0);
  putd("integrator.t1", integrator.t1);
  putd("integrator.stride", integrator.stride());
  putd("analysis.snapshot-time", snapshot_time < 0.0 ? integrator.t1 : snapshot_time);
  put("analysis.fringe-bins", std::to_string(fringe_bins));
  std::string gs;
  for (const auto& g : gates) gs += (gs.empty() ? "" : " ") + g;
  put("gates", gs);
  std::sort(kv.begin(), kv.end());
  return kv;
}

bool ScenarioResult::all_pass() const {
  return std::all_of(gates.begin(), gates.end(), [](const GateResult& g) { return g.pass; });
}

std::vector<ScenarioConfig> builtin_presets() {
  std::vector<ScenarioConfig> out;

  {
    ScenarioConfig c;
    c.name = "fig2-catherine-wheel";
    c.ensemble = UniformContourSpec{1.0, 16};
    c.integrator.t1 = 4.0;  // gamma*t up to 2
    c.integrator.dense_output_stride = 0.04;
    c.gates = {"orbit-match", "constant-speed", "linearity", "node-free"};
    out.push_back(c);
  }
  {
    ScenarioConfig c;
    c.name = "fig3-boosted";
    c.ensemble = UniformContourSpec{1.0, 16};
    c.boost_multiples = {0.8, 2.0, 5.0};
    c.integrator.t1 = 4.0;
    c.integrator.dense_output_stride = 0.04;
    c.gates = {"rotation-angles", "boost-equivalence", "node-free"};
    out.push_back(c);
  }
  {
    ScenarioConfig c;
    c.name = "fig4-asymmetric-product";
    c.model.sigma0x = 2.0;
    c.model.sigma0y = 1.0;
    c.ensemble = UniformContourSpec{1.0, 16};
    c.integrator.t1 = 12.0;  // gamma*t up to 6 for the force-decay window
    c.integrator.dense_output_stride = 0.12;
    c.gates = {"force-decay", "node-free"};
    out.push_back(c);
  }
  {
    ScenarioConfig c;
    c.name = "fig5-superposition";
    c.model.separation = 5.0;
    c.ensemble = CanonicalRingsSpec{{{0.5}, 0.5, 16}, {{0.0, 2.5}, {0.0, -2.5}}};
    c.integrator.t1 = 8.0;
    c.integrator.dense_output_stride = 0.08;
    c.gates = {"chirality-asymmetry", "node-free"};
    out.push_back(c);
  }
  const RingSpec two_slit_rings{{0.4, 0.8, 1.2, 1.6, 2.0, 2.4}, 1.0, 20};
  {
    ScenarioConfig c;
    c.name = "fig6-two-slit-nospin";
    c.model.separation = 20.0;
    c.model.group_velocity = {100.0, 0.0};  // 200 w
    c.ensemble = CanonicalRingsSpec{two_slit_rings, {{0.0, 10.0}, {0.0, -10.0}}};
    c.spin_on = false;
    c.integrator.t1 = 12.0;  // 6 / gamma
    c.integrator.dense_output_stride = 0.12;
    c.gates = {"crossing-dichotomy", "subluminal", "node-free"};
    out.push_back(c);
  }
  {
    ScenarioConfig c;
    c.name = "fig7-two-slit-spin";
    c.model.separation = 20.0;
    c.model.group_velocity = {100.0, 0.0};
    c.ensemble = CanonicalRingsSpec{two_slit_rings, {{0.0, 10.0}, {0.0, -10.0}}};
    c.spin_on = true;
    c.integrator.t1 = 12.0;
    c.integrator.dense_output_stride = 0.12;
    c.gates = {"crossing-dichotomy", "subluminal", "node-free"};
    out.push_back(c);
  }
  {
    ScenarioConfig c;
    c.name = "fig8-speed-ratio";
    c.model.separation = 20.0;
    c.model.group_velocity = {100.0, 0.0};
    c.ensemble = CanonicalRingsSpec{{{1.5}, 1.5, 15}, {{0.0, 10.0}}};
    c.integrator.t1 = 12.0;
    c.integrator.dense_output_stride = 0.03;
    c.gates = {"speed-ratio-bound", "quiet-before-overlap", "spikes-in-overlap",
               "subluminal-absolute", "node-free"};
    out.push_back(c);
  }
  return out;
}

ScenarioConfig preset_by_name(const std::string& name) {
  for (auto& p : builtin_presets())
    if (p.name == name) return p;
  throw ValidationError("scenario", "unknown preset '" + name + "'");
}

void apply_si_units(ScenarioConfig& config) {
  config.units.si = true;
  const double w = config.units.w_si();
  config.constants.c_ratio = config.units.c_m_s / (2.0 * w);
  if (config.model.separation > 0.0 && config.model.group_velocity.x > 0.0) {
    // The SI default keeps the literal group speed of 1e8 m/s.
    config.model.group_velocity.x = config.units.speed_to_internal(1e8);
  }
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const WaveModel model = config.model.build(config.constants);
  const SpinVector spin =
      config.spin_up ? SpinVector::up(config.constants) : SpinVector::down(config.constants);
  const GuidanceMode mode{config.spin_on};

  const std::vector<Vec2> points = build_ensemble(config.ensemble, model);

  ScenarioResult result;
  result.config = config;
  result.version = kToolVersion;

  if (config.boost_multiples.empty()) {
    result.trajectories = integrate_ensemble(model, spin, mode, points, config.integrator);
  } else {
    const double w = config.constants.characteristic_speed(1.0);
    for (double mult : config.boost_multiples) {
      const WaveModel boosted = model.boosted({mult * w, 0.0});
      auto family = integrate_ensemble(boosted, spin, mode, points, config.integrator);
      result.trajectories.insert(result.trajectories.end(), family.begin(), family.end());
    }
  }

  result.axis_crossings = count_events(result.trajectories, Event::Kind::axis_crossing, 0);
  result.node_aborts = count_events(result.trajectories, Event::Kind::node_abort);
  result.subluminal_warnings = count_events(result.trajectories, Event::Kind::subluminal_warning);

  const GateContext ctx{config, model, spin, mode, points, result.trajectories};
  for (const auto& g : config.gates) result.gates.push_back(run_gate(g, ctx));

  // Figure-level reports: fringe histogram for superposition runs.
  if (!config.model.plane && config.model.separation > 0.0) {
    const double snap = config.snapshot_time < 0.0 ? config.integrator.t1 : config.snapshot_time;
    const bool density_sampled = std::holds_alternative<DensitySampleSpec>(config.ensemble);
    try {
      result.reports.emplace_back(
          "fringe-profile",
          fringe_profile(model, result.trajectories, snap, config.fringe_bins, density_sampled));
    } catch (const InsufficientSamplesError&) {
      // small ensembles keep no profile
    }
  }

  std::string canon;
  for (const auto& [k, v] : config.to_kv()) canon += k + "=" + v + "\n";
  result.config_hash = fnv1a64(canon);
  return result;
}

}  // namespace spintraj
