#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "spintraj/ensemble.hpp"
#include "spintraj/stats.hpp"

using namespace spintraj;

namespace {

const PhysicalConstants kPc{};

double gaussian_radial(double r) { return std::exp(-0.5 * r * r); }

WaveModel single_packet() {
  return WaveModel::single({{0, 0}, {0, 0}, {1, 1}, {1, 0}}, kPc);
}

}  // namespace

TEST_CASE("canonical ring counts reproduce the density weighting") {
  const RingSpec spec{{0.4, 0.8, 1.2, 1.6, 2.0, 2.4}, 1.0, 20};
  const RingEnsemble re = canonical_rings(spec, gaussian_radial, {0, 0});

  // oracle: n_k = round(20 exp((1 - r^2)/2))
  std::vector<int> expected;
  for (double r : spec.radii)
    expected.push_back(static_cast<int>(std::llround(20.0 * std::exp(0.5 * (1.0 - r * r)))));
  CHECK(re.counts == expected);
  CHECK(re.counts == std::vector<int>{30, 24, 16, 9, 4, 2});
  CHECK(re.points.size() == 85);
  CHECK(re.dropped.empty());
}

TEST_CASE("single ring at the reference radius") {
  const RingEnsemble re = canonical_rings({{1.0}, 1.0, 20}, gaussian_radial, {0.5, -0.5});
  CHECK(re.points.size() == 20);
  // equally spaced, starting at angle zero, offset by the center
  CHECK(re.points[0].x == doctest::Approx(1.5));
  CHECK(re.points[0].y == doctest::Approx(-0.5));
  for (std::size_t i = 0; i < re.points.size(); ++i) {
    const Vec2 rel = re.points[i] - Vec2{0.5, -0.5};
    CHECK(rel.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double angle = std::atan2(rel.y, rel.x);
    double expected = 2.0 * kPi * i / 20.0;
    if (expected > kPi) expected -= 2.0 * kPi;
    CHECK(angle == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("distant rings are dropped with a report") {
  const RingEnsemble re = canonical_rings({{1.0, 8.0}, 1.0, 20}, gaussian_radial, {0, 0});
  CHECK(re.counts[0] == 20);
  CHECK(re.counts[1] == 0);
  REQUIRE(re.dropped.size() == 1);
  CHECK(re.dropped[0] == 1);
  CHECK(re.points.size() == 20);
}

TEST_CASE("ring spec validation") {
  CHECK_THROWS_AS(canonical_rings({{}, 1.0, 20}, gaussian_radial, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(canonical_rings({{1.0, 0.5}, 1.0, 20}, gaussian_radial, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_rings({{1.0}, 1.0, 0}, gaussian_radial, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("uniform contour") {
  SUBCASE("circle for the symmetric packet") {
    const auto pts = uniform_contour(single_packet(), 1.0, 16);
    REQUIRE(pts.size() == 16);
    for (const Vec2& p : pts) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("ellipse with semi-axes (2, 1) for the asymmetric product") {
    const WaveModel m = WaveModel::single({{0, 0}, {0, 0}, {2, 1}, {1, 0}}, kPc);
    const auto pts = uniform_contour(m, 1.0, 16);
    REQUIRE(pts.size() == 16);
    CHECK(pts[0].x == doctest::Approx(2.0));
    CHECK(pts[0].y == doctest::Approx(0.0).scale(1.0));
    for (const Vec2& p : pts)
      CHECK(p.x * p.x / 4.0 + p.y * p.y == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("count 1 sits at angle zero") {
    const auto pts = uniform_contour(single_packet(), 0.7, 1);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == doctest::Approx(0.7));
    CHECK(pts[0].y == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("superpositions and plane waves are unsupported") {
    const WaveModel sup = WaveModel::superposition(
        {{{0, 2.5}, {0, 0}, {1, 1}, {1, 0}}, {{0, -2.5}, {0, 0}, {1, 1}, {1, 0}}}, kPc);
    CHECK_THROWS_AS((void)uniform_contour(sup, 1.0, 8), UnsupportedModelError);
    CHECK_THROWS_AS((void)uniform_contour(WaveModel::plane_wave({1, 0}, kPc), 1.0, 8),
                    UnsupportedModelError);
  }
}

TEST_CASE("density sampling of a single packet") {
  const WaveModel m = single_packet();
  const int n = 100000;
  const auto pts = sample_density(m, n, 777);
  REQUIRE(pts.size() == static_cast<std::size_t>(n));

  double mx = 0.0, my = 0.0;
  for (const Vec2& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  const double se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mx) <= 3.0 * se);
  CHECK(std::abs(my) <= 3.0 * se);

  // radial law is Rayleigh with scale sigma0
  std::vector<double> radii;
  radii.reserve(n);
  for (const Vec2& p : pts) radii.push_back(p.norm());
  const KsResult ks = ks_test(radii, [](double r) { return rayleigh_cdf(r, 1.0); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("well-separated superposition splits half and half") {
  const WaveModel m = WaveModel::superposition(
      {{{0, 10}, {0, 0}, {1, 1}, {1, 0}}, {{0, -10}, {0, 0}, {1, 1}, {1, 0}}}, kPc);
  const int n = 20000;
  const auto pts = sample_density(m, n, 778);
  int upper = 0;
  for (const Vec2& p : pts)
    if (p.y > 0) ++upper;
  const double sigma = std::sqrt(0.25 * n);
  CHECK(std::abs(upper - n / 2) <= 3.0 * sigma);
}

TEST_CASE("sampling is reproducible and order-independent per index") {
  const WaveModel m = WaveModel::superposition(
      {{{0, 2.5}, {0, 0}, {1, 1}, {1, 0}}, {{0, -2.5}, {0, 0}, {1, 1}, {1, 0}}}, kPc);
  const auto a = sample_density(m, 500, 42);
  const auto b = sample_density(m, 500, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
  // a longer run reproduces the shorter run's prefix bit-exactly
  const auto c = sample_density(m, 800, 42);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == c[i].x);
    CHECK(a[i].y == c[i].y);
  }
  const auto d = sample_density(m, 500, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_diff = any_diff || a[i].x != d[i].x;
  CHECK(any_diff);
}

TEST_CASE("empirical radial CDF converges on a doubling ladder") {
  const WaveModel m = single_packet();
  double prev = 1.0;
  for (int n = 1000; n <= 128000; n *= 2) {
    const auto pts = sample_density(m, n, 4248);
    std::vector<double> radii;
    radii.reserve(pts.size());
    for (const Vec2& p : pts) radii.push_back(p.norm());
    const KsResult ks = ks_test(radii, [](double r) { return rayleigh_cdf(r, 1.0); });
    CHECK(ks.statistic < prev);
    prev = ks.statistic;
  }
}

TEST_CASE("build_ensemble dispatches the declarative specs") {
  const WaveModel m = single_packet();
  CHECK(build_ensemble(UniformContourSpec{1.0, 8}, m).size() == 8);
  CHECK(build_ensemble(DensitySampleSpec{64, 9}, m).size() == 64);
  const CanonicalRingsSpec rings{{{1.0}, 1.0, 4}, {{0, 2}, {0, -2}}};
  const auto pts = build_ensemble(rings, m);
  CHECK(pts.size() == 8);  // 4 per center
}
