#include "spintraj/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "spintraj/ensemble.hpp"
#include "spintraj/parallel.hpp"
#include "spintraj/quantumfields.hpp"

namespace spintraj {

namespace {

double hermite(double s, double p0, double m0, double p1, double m1, double dt) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * dt * m0 + (-2 * s3 + 3 * s2) * p1 +
         (s3 - s2) * dt * m1;
}

std::size_t bracket_index(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const TrajectorySample& a, double tt) { return a.t < tt; });
  if (it == s.begin()) return 0;
  if (it == s.end()) return s.size() - 2;
  return static_cast<std::size_t>(it - s.begin()) - 1;
}

}  // namespace

Vec2 position_at(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  if (s.empty()) throw std::invalid_argument("position_at: empty trajectory");
  if (s.size() == 1 || t <= s.front().t) return s.front().x;
  if (t >= s.back().t) return s.back().x;
  const std::size_t i = bracket_index(traj, t);
  const auto& a = s[i];
  const auto& b = s[i + 1];
  const double dt = b.t - a.t;
  const double u = (t - a.t) / dt;
  return {hermite(u, a.x.x, a.v.x, b.x.x, b.v.x, dt), hermite(u, a.x.y, a.v.y, b.x.y, b.v.y, dt)};
}

Vec2 velocity_at(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  if (s.empty()) throw std::invalid_argument("velocity_at: empty trajectory");
  if (s.size() == 1 || t <= s.front().t) return s.front().v;
  if (t >= s.back().t) return s.back().v;
  const std::size_t i = bracket_index(traj, t);
  const auto& a = s[i];
  const auto& b = s[i + 1];
  const double u = (t - a.t) / (b.t - a.t);
  return a.v + (b.v - a.v) * u;
}

HistogramReport speed_distribution_check(const PhysicalConstants& constants,
                                         const std::vector<double>& speeds, double sigma0) {
  if (speeds.size() < 100)
    throw InsufficientSamplesError("speed_distribution_check: need >= 100 samples");
  const double w = constants.characteristic_speed(sigma0);
  const KsResult ks = ks_test(speeds, [w](double v) { return rayleigh_cdf(v, w); });

  HistogramReport rep;
  const int bins = 40;
  for (int i = 0; i <= bins; ++i) rep.bin_edges.push_back(4.0 * w * i / bins);
  rep.counts = histogram_counts(speeds, rep.bin_edges);
  rep.test_statistic = ks.statistic;
  rep.p_value = ks.p_value;
  return rep;
}

MeanSpinResult mean_spin_angular_momentum(const WaveModel& model, const SpinVector& spin,
                                          int n_samples, std::uint64_t seed) {
  const std::vector<Vec2> pts = sample_density(model, n_samples, seed);
  Vec3 sum{}, sum2{};
  int n = 0;
  for (const Vec2& p : pts) {
    FieldSample f;
    try {
      f = model.fields(p, 0.0);
    } catch (const NodeRegionError&) {
      continue;  // astronomically rare tail draw
    }
    const Vec3 momentum = embed(f.grad_rho / f.rho).cross(spin.vector());
    const Vec3 L = embed(p).cross(momentum);
    sum = sum + L;
    sum2 = sum2 + Vec3{L.x * L.x, L.y * L.y, L.z * L.z};
    ++n;
  }
  MeanSpinResult out;
  out.n = n;
  if (n == 0) return out;
  out.mean = sum / static_cast<double>(n);
  auto se = [&](double s2, double m) {
    const double var = std::max(0.0, s2 / n - m * m);
    return std::sqrt(var / n);
  };
  out.std_error = {se(sum2.x, out.mean.x), se(sum2.y, out.mean.y), se(sum2.z, out.mean.z)};
  return out;
}

TransportReport density_transport_check(const WaveModel& model, const SpinVector& spin,
                                        const GuidanceMode& mode, int n_samples, double t_final,
                                        std::uint64_t seed, const IntegratorConfig* base_config) {
  if (model.kind() != WaveModel::Kind::gaussian || model.packets().size() != 1)
    throw std::invalid_argument(
        "density_transport_check: single-packet models only (use fringe_profile for "
        "superpositions)");
  const GaussianPacket& p = model.packets().front();
  const PhysicalConstants& pc = model.constants();

  const std::vector<Vec2> pts = sample_density(model, n_samples, seed);
  std::vector<Vec2> finals(pts.size());
  std::vector<char> ok(pts.size(), 1);

  if (t_final > 0.0) {
    IntegratorConfig cfg = base_config ? *base_config : IntegratorConfig{};
    cfg.t0 = 0.0;
    cfg.t1 = t_final;
    cfg.watch_x_axis = false;
    cfg.watch_y_axis = false;
    if (cfg.dense_output_stride <= 0.0) cfg.dense_output_stride = t_final;
    parallel_for(pts.size(), [&](std::size_t i) {
      const Trajectory tr = integrate_trajectory(model, spin, mode, pts[i], cfg);
      if (tr.aborted || tr.samples.empty() || tr.samples.back().t < t_final * (1.0 - 1e-9)) {
        ok[i] = 0;
        return;
      }
      finals[i] = tr.samples.back().x;
    });
  } else {
    finals = pts;
  }

  const Vec2 center = p.center0 + p.group_velocity * t_final;
  const bool symmetric = p.sigma0.x == p.sigma0.y;
  const double sx = sigma_of_t(p.sigma0.x, t_final, pc);

  std::vector<double> values;
  values.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!ok[i]) continue;
    values.push_back(symmetric ? (finals[i] - center).norm() : finals[i].x - center.x);
  }

  TransportReport out;
  out.abort_fraction = 1.0 - static_cast<double>(values.size()) / pts.size();
  if (values.empty()) return out;

  KsResult ks;
  if (symmetric) {
    ks = ks_test(values, [sx](double r) { return rayleigh_cdf(r, sx); });
  } else {
    ks = ks_test(values, [sx](double d) { return 0.5 * std::erfc(-d / (sx * std::sqrt(2.0))); });
  }
  out.ks = ks;

  HistogramReport rep;
  const int bins = 40;
  const double lo = symmetric ? 0.0 : -5.0 * sx;
  const double hi = 5.0 * sx;
  for (int i = 0; i <= bins; ++i) rep.bin_edges.push_back(lo + (hi - lo) * i / bins);
  rep.counts = histogram_counts(values, rep.bin_edges);
  rep.test_statistic = ks.statistic;
  rep.p_value = ks.p_value;
  out.histogram = rep;
  return out;
}

HistogramReport fringe_profile(const WaveModel& model, const std::vector<Trajectory>& trajectories,
                               double t_snapshot, int bins, bool statistical_test) {
  if (bins < 2) throw std::invalid_argument("fringe_profile: need >= 2 bins");
  if (statistical_test && trajectories.size() < 100)
    throw InsufficientSamplesError("fringe_profile: need >= 100 trajectories for the test");

  std::vector<double> ys;
  ys.reserve(trajectories.size());
  for (const auto& tr : trajectories) {
    if (tr.samples.empty() || tr.samples.back().t < t_snapshot * (1.0 - 1e-9)) continue;
    ys.push_back(position_at(tr, t_snapshot).y);
  }
  if (ys.empty()) throw InsufficientSamplesError("fringe_profile: no trajectory covers snapshot");

  // Equal-probability bin edges from the analytic y-marginal CDF.
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (const auto& p : model.packets()) {
    const double c = p.center0.y + p.group_velocity.y * t_snapshot;
    const double s = sigma_of_t(p.sigma0.y, t_snapshot, model.constants());
    lo = std::min(lo, c - 8.0 * s);
    hi = std::max(hi, c + 8.0 * s);
  }
  const int grid_n = 4096;
  std::vector<double> grid(grid_n + 1), cum(grid_n + 1, 0.0);
  for (int i = 0; i <= grid_n; ++i) grid[i] = lo + (hi - lo) * i / grid_n;
  double prev = model.marginal_density(1, grid[0], t_snapshot);
  for (int i = 1; i <= grid_n; ++i) {
    const double cur = model.marginal_density(1, grid[i], t_snapshot);
    cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (grid[i] - grid[i - 1]);
    prev = cur;
  }
  const double total = cum[grid_n];

  HistogramReport rep;
  rep.bin_edges.push_back(lo);
  for (int b = 1; b < bins; ++b) {
    const double target = total * b / bins;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const std::size_t i = std::max<std::size_t>(1, static_cast<std::size_t>(it - cum.begin()));
    const double frac = (target - cum[i - 1]) / std::max(cum[i] - cum[i - 1], 1e-300);
    rep.bin_edges.push_back(grid[i - 1] + frac * (grid[i] - grid[i - 1]));
  }
  rep.bin_edges.push_back(hi);
  rep.counts = histogram_counts(ys, rep.bin_edges);

  if (statistical_test) {
    const double expected_each = static_cast<double>(ys.size()) / bins;
    const std::vector<double> expected(static_cast<std::size_t>(bins), expected_each);
    const ChiSquareResult cs = chi_square_test(rep.counts, expected);
    rep.test_statistic = cs.statistic;
    rep.p_value = cs.p_value;
  }
  return rep;
}

LimitMonitor limit_monitors(const WaveModel& model, Vec2 x, double t, const SpinVector& spin,
                            const PhysicalConstants& constants) {
  LimitMonitor out;
  out.spin_ratio = spin_significance(model.fields(x, t), constants);
  const GuidanceMode off{false};
  const Vec3 qforce = lorentz_force(model, x, t, spin, off, {});
  const double len = model.characteristic_length(0.0);
  const double ref = constants.hbar * constants.hbar / (2.0 * constants.mass * len * len * len);
  out.qforce_scale = qforce.norm() / ref;
  return out;
}

}  // namespace spintraj
