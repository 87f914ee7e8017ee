#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spintraj/ensemble.hpp"
#include "spintraj/integrator.hpp"

using namespace spintraj;

namespace {

const PhysicalConstants kPc{};
const SpinVector kSpin = SpinVector::up(kPc);

WaveModel symmetric_packet() {
  return WaveModel::single({{0, 0}, {0, 0}, {1, 1}, {1, 0}}, kPc);
}

IntegratorConfig fig2_config() {
  IntegratorConfig cfg;
  cfg.t1 = 4.0;
  cfg.dense_output_stride = 0.04;
  return cfg;
}

}  // namespace

TEST_CASE("closed-form orbit reference values") {
  // gamma t = 1 at t = 2 with the defaults
  const OrbitPoint a = closed_form_gaussian_orbit({0, 1}, 2.0, kPc);
  CHECK(a.x.x == doctest::Approx(-1.0));
  CHECK(a.x.y == doctest::Approx(1.0));
  const OrbitPoint b = closed_form_gaussian_orbit({1, 0}, 2.0, kPc);
  CHECK(b.x.norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::atan2(b.x.y, b.x.x) == doctest::Approx(kPi / 4.0));
  const OrbitPoint c = closed_form_gaussian_orbit({0.3, -0.4}, 0.0, kPc);
  CHECK(c.x.x == doctest::Approx(0.3));
  CHECK(c.x.y == doctest::Approx(-0.4));
  CHECK(c.v.x == doctest::Approx(0.5 * 0.4));   // gamma * (-y0)
  CHECK(c.v.y == doctest::Approx(0.5 * 0.3));   // gamma * x0
  CHECK(c.v.norm() == doctest::Approx(0.5 * 0.5));  // gamma * r0
}

TEST_CASE("spin-extended trajectory matches the closed form") {
  const WaveModel m = symmetric_packet();
  const Trajectory tr = integrate_trajectory(m, kSpin, {true}, {1, 0}, fig2_config());
  REQUIRE(!tr.samples.empty());
  CHECK(tr.samples.size() == 101);
  CHECK(!tr.aborted);
  for (const auto& s : tr.samples) {
    const OrbitPoint ref = closed_form_gaussian_orbit({1, 0}, s.t, kPc);
    CHECK((s.x - ref.x).norm() < 1e-6 * std::max(1.0, ref.x.norm()));
  }
  // endpoint at gamma t = 2: r = sqrt(5) r0
  CHECK(tr.samples.back().x.norm() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
}

TEST_CASE("phase-only trajectories are radial") {
  const WaveModel m = symmetric_packet();
  const Vec2 x0{0.6, 0.8};
  const Trajectory tr = integrate_trajectory(m, kSpin, {false}, x0, fig2_config());
  for (const auto& s : tr.samples) {
    CHECK(std::abs(s.x.x * x0.y - s.x.y * x0.x) < 1e-8);
  }
  // radius grows with sigma(t)
  CHECK(tr.samples.back().x.norm() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
}

TEST_CASE("plane wave advects ballistically") {
  const WaveModel pw = WaveModel::plane_wave({2, 0}, kPc);
  IntegratorConfig cfg;
  cfg.t1 = 1.0;
  for (bool spin_on : {true, false}) {
    const Trajectory tr = integrate_trajectory(pw, kSpin, {spin_on}, {0, 0}, cfg);
    CHECK(tr.samples.back().x.x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(tr.samples.back().x.y) < 1e-12);
  }
}

TEST_CASE("ensemble integration keeps order and reports constant speeds") {
  const WaveModel m = symmetric_packet();
  const auto points = uniform_contour(m, 1.0, 16);
  const auto trajs = integrate_ensemble(m, kSpin, {true}, points, fig2_config());
  REQUIRE(trajs.size() == 16);
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    CHECK(trajs[i].initial.x == points[i].x);
    for (const auto& s : trajs[i].samples)
      CHECK(std::abs(s.speed - 0.5) < 1e-6 * 0.5);  // gamma r0 = 0.5
  }
  // spin-off ensemble: angular coordinate frozen
  const auto radial = integrate_ensemble(m, kSpin, {false}, points, fig2_config());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double theta0 = std::atan2(points[i].y, points[i].x);
    for (const auto& s : radial[i].samples) {
      if (s.x.norm() < 1e-12) continue;
      double dtheta = std::atan2(s.x.y, s.x.x) - theta0;
      if (dtheta > kPi) dtheta -= 2 * kPi;
      if (dtheta < -kPi) dtheta += 2 * kPi;
      CHECK(std::abs(dtheta) < 1e-8);
    }
  }
  CHECK(integrate_ensemble(m, kSpin, {true}, {}, fig2_config()).empty());
}

TEST_CASE("trajectories of one flow never collide in spacetime") {
  const WaveModel m = symmetric_packet();
  const auto points = uniform_contour(m, 1.0, 16);
  const auto trajs = integrate_ensemble(m, kSpin, {true}, points, fig2_config());
  for (std::size_t a = 0; a < trajs.size(); ++a) {
    for (std::size_t b = a + 1; b < trajs.size(); ++b) {
      const std::size_t n = std::min(trajs[a].samples.size(), trajs[b].samples.size());
      for (std::size_t k = 0; k < n; ++k)
        CHECK((trajs[a].samples[k].x - trajs[b].samples[k].x).norm() > 1e-6);
    }
  }
}

TEST_CASE("tolerance ladder converges to the closed form") {
  const WaveModel m = symmetric_packet();
  double prev_err = 1.0;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    IntegratorConfig cfg = fig2_config();
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    const Trajectory tr = integrate_trajectory(m, kSpin, {true}, {1, 0}, cfg);
    const OrbitPoint ref = closed_form_gaussian_orbit({1, 0}, 4.0, kPc);
    const double err = (tr.samples.back().x - ref.x).norm();
    CHECK(err <= std::max(prev_err, 5e-13));
    prev_err = err;
  }
}

TEST_CASE("axis-crossing events are located precisely") {
  const WaveModel pw = WaveModel::plane_wave({0, 2}, kPc);
  IntegratorConfig cfg;
  cfg.t1 = 1.0;
  const Trajectory tr = integrate_trajectory(pw, kSpin, {false}, {0.5, -1.0}, cfg);
  // y(t) = -1 + 2 t crosses zero at t = 0.5
  REQUIRE(tr.events.size() == 1);
  const Event& e = tr.events.front();
  CHECK(e.kind == Event::Kind::axis_crossing);
  CHECK(e.axis == 0);
  CHECK(e.t == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(e.x.x == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(e.x.y) < 1e-9);
}

TEST_CASE("subluminal warning fires when the speed reaches c") {
  // plane wave with hbar k/m = 1.1 c: margin 0.55 > 1/2
  const WaveModel pw = WaveModel::plane_wave({1.1 * kPc.c_ratio, 0}, kPc);
  IntegratorConfig cfg;
  cfg.t1 = 0.1;
  const Trajectory tr = integrate_trajectory(pw, kSpin, {true}, {0, 0}, cfg);
  REQUIRE(!tr.events.empty());
  CHECK(tr.events.front().kind == Event::Kind::subluminal_warning);
  CHECK(tr.events.front().margin == doctest::Approx(0.55).epsilon(1e-9));
}

TEST_CASE("node abort terminates a trajectory mid-flight") {
  // Two packets flying apart; the phase-gradient flow keeps the midpoint
  // trajectory on the symmetry line while the density there collapses.
  // (With the spin term on, the kinetic interdependence pushes it off the
  // line and it escapes with one packet.)
  const WaveModel m = WaveModel::superposition({{{-5, 0}, {-5, 0}, {1, 1}, {1, 0}},
                                                {{5, 0}, {5, 0}, {1, 1}, {1, 0}}},
                                               kPc);
  IntegratorConfig cfg;
  cfg.t1 = 4.0;
  cfg.dense_output_stride = 0.01;
  const Trajectory tr = integrate_trajectory(m, kSpin, {false}, {0.0, 0.2}, cfg);
  CHECK(tr.aborted);
  REQUIRE(!tr.events.empty());
  CHECK(tr.events.back().kind == Event::Kind::node_abort);
  CHECK(tr.events.back().t < 4.0);
  CHECK(tr.events.back().t > 0.0);
  REQUIRE(!tr.samples.empty());
  CHECK(tr.samples.back().t < 4.0);  // partial trajectory returned
}

TEST_CASE("starting below the node floor aborts at t0") {
  const WaveModel m = symmetric_packet();
  IntegratorConfig cfg;
  cfg.t1 = 1.0;
  const Trajectory tr = integrate_trajectory(m, kSpin, {true}, {9.0, 0.0}, cfg);
  CHECK(tr.aborted);
  REQUIRE(!tr.events.empty());
  CHECK(tr.events.front().kind == Event::Kind::node_abort);
  CHECK(tr.events.front().t == 0.0);
}

TEST_CASE("boost of a recorded trajectory") {
  const WaveModel m = symmetric_packet();
  const Trajectory rest = integrate_trajectory(m, kSpin, {true}, {1, 0}, fig2_config());

  SUBCASE("u = 0 is the identity") {
    const Trajectory same = boost_trajectory(rest, {0, 0});
    REQUIRE(same.samples.size() == rest.samples.size());
    for (std::size_t i = 0; i < rest.samples.size(); ++i) {
      CHECK(same.samples[i].x.x == rest.samples[i].x.x);
      CHECK(same.samples[i].x.y == rest.samples[i].x.y);
    }
  }
  SUBCASE("boosting the path equals integrating the boosted model") {
    const Vec2 u{1.0, 0.0};  // 2 w
    const Trajectory boosted = boost_trajectory(rest, u);
    const Trajectory direct =
        integrate_trajectory(m.boosted(u), kSpin, {true}, {1, 0}, fig2_config());
    REQUIRE(boosted.samples.size() == direct.samples.size());
    for (std::size_t i = 0; i < boosted.samples.size(); ++i)
      CHECK((boosted.samples[i].x - direct.samples[i].x).norm() < 1e-6);
    // direction matches the vector sum of trajectory and boost velocities
    const Vec2 dir = boosted.samples.back().x - boosted.samples.front().x;
    const Vec2 expect = Vec2{u.x - 0.0, 0.5};  // gamma r0 b-hat + u with b-hat = +y
    CHECK(std::atan2(dir.y, dir.x) ==
          doctest::Approx(std::atan2(expect.y, expect.x)).epsilon(1e-6));
  }
  SUBCASE("boost re-evaluates axis crossings") {
    // the orbit from (0, 1) keeps y = 1; a downward boost drags it across
    // the x-axis at t = 1
    const Trajectory high = integrate_trajectory(m, kSpin, {true}, {0, 1}, fig2_config());
    const Trajectory boosted = boost_trajectory(high, {0.0, -1.0});
    bool crossed = false;
    for (const auto& e : boosted.events) {
      if (e.kind == Event::Kind::axis_crossing && e.axis == 0) {
        crossed = true;
        CHECK(e.t == doctest::Approx(1.0).epsilon(1e-6));
      }
    }
    CHECK(crossed);
  }
}

TEST_CASE("rotation angle from the velocity vector sum") {
  const double w = kPc.characteristic_speed(1.0);
  CHECK(rotation_angle_alpha(1.0, kPi / 2.0, 0.0, kPc) == doctest::Approx(0.0));
  // r0 = 1, beta = 90 deg, u = 2w = 1: cos(alpha) = 0.5/sqrt(1.25)
  const double alpha = rotation_angle_alpha(1.0, kPi / 2.0, 2.0 * w, kPc);
  // oracle: direct 2-vector arithmetic
  const Vec2 b{0.0, 1.0}, sum{1.0, 0.5};
  const double oracle = std::acos(b.dot(sum) / sum.norm());
  CHECK(alpha == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(alpha * 180.0 / kPi == doctest::Approx(63.43494882).epsilon(1e-8));
  // asymptotic limit: u = 100 w, beta = 30 deg
  const double beta = kPi / 6.0;
  const double a100 = rotation_angle_alpha(1.0, beta, 100.0 * w, kPc);
  CHECK(std::abs(a100 - beta) * 180.0 / kPi < 0.3);
  CHECK_THROWS_AS(rotation_angle_alpha(0.0, 0.0, 1.0, kPc), std::invalid_argument);
}

TEST_CASE("integration is deterministic") {
  const WaveModel m = WaveModel::superposition({{{0, 2.5}, {0, 0}, {1, 1}, {1, 0}},
                                                {{0, -2.5}, {0, 0}, {1, 1}, {1, 0}}},
                                               kPc);
  IntegratorConfig cfg;
  cfg.t1 = 3.0;
  const Trajectory a = integrate_trajectory(m, kSpin, {true}, {0.5, 2.7}, cfg);
  const Trajectory b = integrate_trajectory(m, kSpin, {true}, {0.5, 2.7}, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].x.x == b.samples[i].x.x);
    CHECK(a.samples[i].x.y == b.samples[i].x.y);
  }
}

TEST_CASE("config validation") {
  IntegratorConfig cfg;
  cfg.t1 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t1 = 1.0;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
