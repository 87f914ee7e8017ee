#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spintraj/output.hpp"
#include "spintraj/scenarios.hpp"
#include "spintraj/svg.hpp"

using namespace spintraj;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("spintraj_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

ScenarioResult small_result() {
  ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  UniformContourSpec contour{1.0, 4};
  cfg.ensemble = contour;
  return run_scenario(cfg);
}

}  // namespace

TEST_CASE("csv schema and row counts") {
  const ScenarioResult res = run_scenario(preset_by_name("fig2-catherine-wheel"));
  const fs::path dir = temp_dir("csv");
  emit_csv(res, dir);

  const std::string traj = slurp(dir / "trajectories.csv");
  CHECK(traj.rfind("traj_id,t,x,y,vx,vy,speed\n", 0) == 0);
  // 16 trajectories x 101 stride samples
  CHECK(count_lines(traj) == 1 + 16 * 101);

  const std::string events = slurp(dir / "events.csv");
  CHECK(events.rfind("traj_id,kind,t,x,y\n", 0) == 0);
}

TEST_CASE("csv round-trips bit-exactly") {
  const ScenarioResult res = small_result();
  const fs::path dir = temp_dir("roundtrip");
  emit_csv(res, dir);
  const auto parsed = parse_trajectories_csv(dir / "trajectories.csv");
  REQUIRE(parsed.size() == res.trajectories.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    REQUIRE(parsed[i].samples.size() == res.trajectories[i].samples.size());
    for (std::size_t k = 0; k < parsed[i].samples.size(); ++k) {
      const auto& a = parsed[i].samples[k];
      const auto& b = res.trajectories[i].samples[k];
      CHECK(a.t == b.t);
      CHECK(a.x.x == b.x.x);
      CHECK(a.x.y == b.x.y);
      CHECK(a.v.x == b.v.x);
      CHECK(a.v.y == b.v.y);
      CHECK(a.speed == b.speed);
    }
  }
}

TEST_CASE("manifest hashes match emitted files") {
  const ScenarioResult res = small_result();
  const fs::path dir = temp_dir("manifest");
  emit_csv(res, dir);
  CHECK(verify_manifest(dir));
  // corrupt one file and the check fails
  std::ofstream(dir / "events.csv", std::ios::app) << "tamper\n";
  CHECK_FALSE(verify_manifest(dir));
}

TEST_CASE("two-slit spin-on bundle records axis crossings") {
  const ScenarioResult res = run_scenario(preset_by_name("fig7-two-slit-spin"));
  const fs::path dir = temp_dir("fig7events");
  emit_csv(res, dir);
  const auto events = parse_events_csv(dir / "events.csv");
  int crossings = 0;
  for (const auto& e : events)
    if (e.kind == "axis-crossing") ++crossings;
  CHECK(crossings >= 1);
}

TEST_CASE("reports are valid json lines") {
  const ScenarioResult res = small_result();
  const fs::path dir = temp_dir("reports");
  emit_csv(res, dir);
  std::ifstream in(dir / "reports.jsonl");
  std::string line;
  int n = 0;
  bool saw_summary = false, saw_gate = false;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("type") == "summary") saw_summary = true;
    if (j.at("type") == "gate") saw_gate = true;
    ++n;
  }
  CHECK(saw_summary);
  CHECK(saw_gate);
  CHECK(n >= 2);
}

TEST_CASE("identical runs produce identical bundles") {
  const ScenarioResult a = small_result();
  const ScenarioResult b = small_result();
  const fs::path da = temp_dir("det_a"), db = temp_dir("det_b");
  emit_csv(a, da);
  emit_csv(b, db);
  for (const char* name : {"trajectories.csv", "events.csv", "reports.jsonl", "manifest.json"})
    CHECK(slurp(da / name) == slurp(db / name));
}

TEST_CASE("empty result emits header-only files") {
  ScenarioResult res;
  res.config = preset_by_name("fig2-catherine-wheel");
  const fs::path dir = temp_dir("empty");
  emit_csv(res, dir);
  CHECK(slurp(dir / "trajectories.csv") == "traj_id,t,x,y,vx,vy,speed\n");
  CHECK(slurp(dir / "events.csv") == "traj_id,kind,t,x,y\n");
  // an empty plot still renders axes
  const auto files = emit_svg(res, dir);
  REQUIRE(!files.empty());
  const std::string svg = slurp(files.front());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("svg output is deterministic and draws every trajectory") {
  const ScenarioResult res = run_scenario(preset_by_name("fig2-catherine-wheel"));
  const fs::path da = temp_dir("svg_a"), db = temp_dir("svg_b");
  const auto fa = emit_svg(res, da);
  const auto fb = emit_svg(res, db);
  REQUIRE(!fa.empty());
  const std::string sa = slurp(fa.front());
  CHECK(sa == slurp(fb.front()));
  // 16 trajectory polylines + 2 dashed density contours
  std::size_t polylines = 0;
  for (std::size_t pos = sa.find("<polyline"); pos != std::string::npos;
       pos = sa.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 18);
  CHECK(sa.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("si units scale the emitted columns") {
  ScenarioConfig cfg = preset_by_name("fig2-catherine-wheel");
  cfg.ensemble = UniformContourSpec{1.0, 2};
  ScenarioConfig si_cfg = cfg;
  apply_si_units(si_cfg);
  const ScenarioResult plain = run_scenario(cfg);
  const ScenarioResult scaled = run_scenario(si_cfg);
  const fs::path dp = temp_dir("si_plain"), ds = temp_dir("si_scaled");
  emit_csv(plain, dp);
  emit_csv(scaled, ds);
  const auto tp = parse_trajectories_csv(dp / "trajectories.csv");
  const auto ts = parse_trajectories_csv(ds / "trajectories.csv");
  const double sigma0 = si_cfg.units.sigma0_m;
  // lengths scale by sigma0 between the two unit systems
  CHECK(ts[0].samples.back().x.x ==
        doctest::Approx(tp[0].samples.back().x.x * sigma0).epsilon(1e-12));
}
