#include "spintraj/ensemble.hpp"

#include <cmath>

#include "spintraj/rng.hpp"

namespace spintraj {

void RingSpec::validate() const {
  if (radii.empty()) throw std::invalid_argument("RingSpec: radii empty");
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev)) throw std::invalid_argument("RingSpec: radii must be positive and strictly increasing");
    prev = r;
  }
  if (reference_count < 1) throw std::invalid_argument("RingSpec: reference_count must be >= 1");
  if (!(reference_radius > 0.0)) throw std::invalid_argument("RingSpec: reference_radius must be > 0");
}

RingEnsemble canonical_rings(const RingSpec& spec,
                             const std::function<double(double)>& radial_density, Vec2 center) {
  spec.validate();
  const double ref = radial_density(spec.reference_radius);
  if (!(ref > 0.0)) throw std::invalid_argument("canonical_rings: density vanishes at reference radius");

  RingEnsemble out;
  for (std::size_t k = 0; k < spec.radii.size(); ++k) {
    const double r = spec.radii[k];
    // Nearest integer, half away from zero.
    const int n = static_cast<int>(std::llround(spec.reference_count * radial_density(r) / ref));
    out.counts.push_back(n);
    if (n == 0) {
      out.dropped.push_back(k);
      continue;
    }
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * kPi * j / n;
      out.points.push_back({center.x + r * std::cos(phi), center.y + r * std::sin(phi)});
    }
  }
  return out;
}

std::vector<Vec2> circle_points(Vec2 center, double radius, int count) {
  if (count < 1) throw std::invalid_argument("circle_points: count must be >= 1");
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double phi = 2.0 * kPi * j / count;
    pts.push_back({center.x + radius * std::cos(phi), center.y + radius * std::sin(phi)});
  }
  return pts;
}

std::vector<Vec2> uniform_contour(const WaveModel& model, double scale, int count) {
  if (count < 1) throw std::invalid_argument("uniform_contour: count must be >= 1");
  if (!(scale > 0.0)) throw std::invalid_argument("uniform_contour: scale must be > 0");
  if (model.kind() != WaveModel::Kind::gaussian || model.packets().size() != 1)
    throw UnsupportedModelError(
        "uniform_contour: constant-density contours are parametrized only for "
        "single-packet models; use sample_density instead");
  const GaussianPacket& p = model.packets().front();
  const double smin = std::min(p.sigma0.x, p.sigma0.y);
  const double ax = p.sigma0.x * scale / smin;
  const double ay = p.sigma0.y * scale / smin;
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double phi = 2.0 * kPi * j / count;
    pts.push_back({p.center0.x + ax * std::cos(phi), p.center0.y + ay * std::sin(phi)});
  }
  return pts;
}

std::vector<Vec2> sample_density(const WaveModel& model, int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_density: count must be >= 0");
  if (model.kind() != WaveModel::Kind::gaussian)
    throw UnsupportedModelError("sample_density: model must be a normalizable Gaussian family");

  const auto& packets = model.packets();
  const SplitRng root(seed);
  std::vector<Vec2> out(static_cast<std::size_t>(count));

  if (packets.size() == 1) {
    const GaussianPacket& p = packets.front();
    for (int i = 0; i < count; ++i) {
      SplitRng rng = root.substream(static_cast<std::uint64_t>(i));
      const auto [n1, n2] = rng.normal_pair();
      out[i] = {p.center0.x + p.sigma0.x * n1, p.center0.y + p.sigma0.y * n2};
    }
    return out;
  }

  // Rejection against the packet-mixture envelope: rho <= K * sum_k
  // |w_k|^2 rho_k by Cauchy-Schwarz, with rho_k the unit-packet density.
  const std::size_t K = packets.size();
  std::vector<double> comp_weight(K);
  double wsum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    comp_weight[k] = std::norm(packets[k].weight);
    wsum += comp_weight[k];
  }
  auto envelope = [&](Vec2 x) {
    double g = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const GaussianPacket& p = packets[k];
      const double dx = (x.x - p.center0.x) / p.sigma0.x;
      const double dy = (x.y - p.center0.y) / p.sigma0.y;
      g += comp_weight[k] * std::exp(-0.5 * (dx * dx + dy * dy)) /
           (2.0 * kPi * p.sigma0.x * p.sigma0.y);
    }
    return g;
  };

  for (int i = 0; i < count; ++i) {
    SplitRng rng = root.substream(static_cast<std::uint64_t>(i));
    for (;;) {
      double pick = rng.uniform01() * wsum;
      std::size_t k = 0;
      while (k + 1 < K && pick > comp_weight[k]) {
        pick -= comp_weight[k];
        ++k;
      }
      const GaussianPacket& p = packets[k];
      const auto [n1, n2] = rng.normal_pair();
      const Vec2 x{p.center0.x + p.sigma0.x * n1, p.center0.y + p.sigma0.y * n2};
      const double accept = model.density(x, 0.0) / (static_cast<double>(K) * envelope(x));
      if (rng.uniform01() < accept) {
        out[i] = x;
        break;
      }
    }
  }
  return out;
}

std::vector<Vec2> build_ensemble(const EnsembleSpec& spec, const WaveModel& model) {
  return std::visit(
      [&](const auto& s) -> std::vector<Vec2> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CanonicalRingsSpec>) {
          if (model.kind() != WaveModel::Kind::gaussian)
            throw UnsupportedModelError("canonical rings need a Gaussian model");
          const GaussianPacket& p = model.packets().front();
          const double s0 = p.sigma0.x;
          auto radial = [s0](double r) { return std::exp(-0.5 * r * r / (s0 * s0)); };
          std::vector<Vec2> all;
          for (Vec2 c : s.centers) {
            RingEnsemble re = canonical_rings(s.rings, radial, c);
            all.insert(all.end(), re.points.begin(), re.points.end());
          }
          return all;
        } else if constexpr (std::is_same_v<T, UniformContourSpec>) {
          return uniform_contour(model, s.scale, s.count);
        } else {
          return sample_density(model, s.count, s.seed);
        }
      },
      spec);
}

}  // namespace spintraj
