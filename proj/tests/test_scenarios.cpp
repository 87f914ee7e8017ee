#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "spintraj/config.hpp"
#include "spintraj/scenarios.hpp"

using namespace spintraj;

namespace {

GateResult gate_of(const ScenarioResult& r, const std::string& name) {
  for (const auto& g : r.gates)
    if (g.name == name) return g;
  FAIL("gate not found: ", name);
  return {};
}

}  // namespace

TEST_CASE("builtin presets match the canonical list") {
  const auto presets = builtin_presets();
  REQUIRE(presets.size() == 7);
  const std::vector<std::string> names{
      "fig2-catherine-wheel", "fig3-boosted",       "fig4-asymmetric-product",
      "fig5-superposition",   "fig6-two-slit-nospin", "fig7-two-slit-spin",
      "fig8-speed-ratio"};
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(presets[i].name == names[i]);

  const ScenarioConfig fig7 = preset_by_name("fig7-two-slit-spin");
  CHECK(fig7.model.separation == doctest::Approx(20.0));
  CHECK(fig7.model.group_velocity.x == doctest::Approx(100.0));  // 200 w
  const auto* rings = std::get_if<CanonicalRingsSpec>(&fig7.ensemble);
  REQUIRE(rings != nullptr);
  CHECK(rings->rings.radii == std::vector<double>{0.4, 0.8, 1.2, 1.6, 2.0, 2.4});
  CHECK(rings->rings.reference_count == 20);
  CHECK(rings->rings.reference_radius == doctest::Approx(1.0));
  CHECK(rings->centers.size() == 2);

  const ScenarioConfig fig4 = preset_by_name("fig4-asymmetric-product");
  CHECK(fig4.model.sigma0x == doctest::Approx(2.0 * fig4.model.sigma0y));

  CHECK_THROWS_AS(preset_by_name("fig9-unknown"), ValidationError);
}

TEST_CASE("catherine wheel preset passes its gates") {
  const ScenarioResult res = run_scenario(preset_by_name("fig2-catherine-wheel"));
  CHECK(res.trajectories.size() == 16);
  CHECK(res.all_pass());
  CHECK(gate_of(res, "orbit-match").value < 1e-6);
  CHECK(gate_of(res, "constant-speed").value < 1e-6);
  CHECK(gate_of(res, "linearity").value < 1e-6);
  CHECK(res.node_aborts == 0);
}

TEST_CASE("boosted preset reproduces the rotation-angle law") {
  const ScenarioResult res = run_scenario(preset_by_name("fig3-boosted"));
  CHECK(res.trajectories.size() == 48);  // three families of 16
  CHECK(res.all_pass());
}

TEST_CASE("asymmetric product force decays") {
  const ScenarioResult res = run_scenario(preset_by_name("fig4-asymmetric-product"));
  CHECK(res.all_pass());
  CHECK(gate_of(res, "force-decay").value < 1.0);
}

TEST_CASE("superposition chirality appears only with the spin term") {
  const ScenarioResult res = run_scenario(preset_by_name("fig5-superposition"));
  CHECK(res.all_pass());
  const GateResult g = gate_of(res, "chirality-asymmetry");
  CHECK(g.value > 0.1);  // spin-on asymmetry is macroscopic
}

TEST_CASE("speed-ratio preset bounds and localizes the spikes") {
  const ScenarioResult res = run_scenario(preset_by_name("fig8-speed-ratio"));
  CHECK(res.trajectories.size() == 15);
  CHECK(res.all_pass());
  CHECK(gate_of(res, "speed-ratio-bound").value < 0.05);
  CHECK(gate_of(res, "spikes-in-overlap").value >= gate_of(res, "spikes-in-overlap").threshold);
}

TEST_CASE("scenario runs are deterministic") {
  const ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  const ScenarioResult a = run_scenario(cfg);
  const ScenarioResult b = run_scenario(cfg);
  CHECK(a.config_hash == b.config_hash);
  REQUIRE(a.trajectories.size() == b.trajectories.size());
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    const auto& sa = a.trajectories[i].samples;
    const auto& sb = b.trajectories[i].samples;
    REQUIRE(sa.size() == sb.size());
    for (std::size_t k = 0; k < sa.size(); ++k) {
      CHECK(sa[k].x.x == sb[k].x.x);
      CHECK(sa[k].x.y == sb[k].x.y);
    }
  }
}

TEST_CASE("SI anchors change only the unit layer") {
  ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  ScenarioConfig si = cfg;
  apply_si_units(si);
  CHECK(si.units.si);
  // c expressed in internal speed units: c / (2 w_si)
  CHECK(si.constants.c_ratio ==
        doctest::Approx(si.units.c_m_s / (2.0 * si.units.w_si())).epsilon(1e-12));
  // characteristic speed ~ 2.9e3 m/s for the electron-scale anchors
  CHECK(si.units.w_si() == doctest::Approx(2894.0).epsilon(0.01));

  const ScenarioResult plain = run_scenario(cfg);
  const ScenarioResult scaled = run_scenario(si);
  // identical internal trajectories; only output conversion differs
  REQUIRE(plain.trajectories.size() == scaled.trajectories.size());
  const auto& pa = plain.trajectories[3].samples;
  const auto& pb = scaled.trajectories[3].samples;
  REQUIRE(pa.size() == pb.size());
  for (std::size_t k = 0; k < pa.size(); ++k) CHECK(pa[k].x.x == pb[k].x.x);

  const ScenarioConfig fig7 = preset_by_name("fig7-two-slit-spin");
  ScenarioConfig fig7si = fig7;
  apply_si_units(fig7si);
  // the SI preset keeps the literal 1e8 m/s group speed
  CHECK(fig7si.model.group_velocity.x ==
        doctest::Approx(fig7si.units.speed_to_internal(1e8)).epsilon(1e-12));
}

TEST_CASE("config parsing") {
  SUBCASE("minimal file selects a preset with defaults") {
    const ScenarioConfig cfg = parse_config_text("scenario = fig2-catherine-wheel\n");
    CHECK(cfg.name == "fig2-catherine-wheel");
    CHECK(cfg.integrator.t1 == doctest::Approx(4.0));
  }
  SUBCASE("sections, comments and overrides") {
    const std::string text =
        "# two-slit with a larger separation\n"
        "scenario = fig7-two-slit-spin\n"
        "seed = 9\n"
        "spin = off\n"
        "[two-slit]\n"
        "separation = 24   # units of sigma0\n"
        "group-speed = 150\n"
        "[integrator]\n"
        "t-final = 3\n";
    const ScenarioConfig cfg = parse_config_text(text);
    CHECK(cfg.seed == 9);
    CHECK_FALSE(cfg.spin_on);
    CHECK(cfg.model.separation == doctest::Approx(24.0));
    // speeds are declared in units of w = 1/2
    CHECK(cfg.model.group_velocity.x == doctest::Approx(75.0));
    // times are declared in units of 1/gamma = 2
    CHECK(cfg.integrator.t1 == doctest::Approx(6.0));
  }
  SUBCASE("negative separation names the key") {
    try {
      (void)parse_config_text("scenario = fig7-two-slit-spin\n[two-slit]\nseparation = -1\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.key() == "two-slit.separation");
    }
  }
  SUBCASE("unknown keys are hard errors") {
    CHECK_THROWS_AS((void)parse_config_text("scenario = fig2-catherine-wheel\nturbo = on\n"),
                    ValidationError);
  }
  SUBCASE("syntax errors carry line numbers") {
    try {
      (void)parse_config_text("scenario = fig2-catherine-wheel\nnot-a-pair\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS((void)parse_config_text("scenario = fig2-catherine-wheel\nseed = red\n"),
                    ParseError);
  }
  SUBCASE("missing scenario") {
    CHECK_THROWS_AS((void)parse_config_text("seed = 1\n"), ValidationError);
  }
  SUBCASE("si units convert on load") {
    const std::string text =
        "scenario = fig7-two-slit-spin\n"
        "units = si\n"
        "[two-slit]\n"
        "separation = 4e-7\n"  // meters: 20 sigma0
        "group-speed = 1e8\n";
    const ScenarioConfig cfg = parse_config_text(text);
    CHECK(cfg.units.si);
    CHECK(cfg.model.separation == doctest::Approx(20.0));
    CHECK(cfg.model.group_velocity.x ==
          doctest::Approx(cfg.units.speed_to_internal(1e8)).epsilon(1e-12));
  }
  SUBCASE("ring-radius moves the speed study to another contour") {
    const ScenarioConfig cfg = parse_config_text(
        "scenario = fig8-speed-ratio\n[ensemble]\nring-radius = 1\n");
    const auto* rings = std::get_if<CanonicalRingsSpec>(&cfg.ensemble);
    REQUIRE(rings != nullptr);
    CHECK(rings->rings.radii == std::vector<double>{1.0});
    CHECK(rings->rings.reference_radius == doctest::Approx(1.0));
    // the sigma0 variant of the speed study passes the same gates
    const ScenarioResult res = run_scenario(cfg);
    CHECK(res.all_pass());
  }
  SUBCASE("density-sample override follows the seed") {
    const ScenarioConfig cfg = parse_config_text(
        "scenario = fig7-two-slit-spin\nseed = 5\n[ensemble]\nsample-count = 200\n");
    const auto* ds = std::get_if<DensitySampleSpec>(&cfg.ensemble);
    REQUIRE(ds != nullptr);
    CHECK(ds->count == 200);
    CHECK(ds->seed == 5);
  }
}

TEST_CASE("scenario validation names offending fields") {
  ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  cfg.model.sigma0x = -1.0;
  try {
    cfg.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.key() == "model.sigma0x");
  }
  ScenarioConfig cfg2 = preset_by_name("fig2-catherine-wheel");
  cfg2.snapshot_time = 99.0;
  CHECK_THROWS_AS(cfg2.validate(), ValidationError);
}
