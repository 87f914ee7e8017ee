// Command-line front end: scenario execution, acceptance verification and
// plotting of previously emitted result directories.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spintraj/acceptance.hpp"
#include "spintraj/config.hpp"
#include "spintraj/format.hpp"
#include "spintraj/output.hpp"
#include "spintraj/scenarios.hpp"
#include "spintraj/svg.hpp"
#include "spintraj/version.hpp"

namespace {

using namespace spintraj;

constexpr int kExitOk = 0;
constexpr int kExitGateFailure = 1;
constexpr int kExitUsage = 2;

int cmd_run(const std::string& preset, const std::string& config_path, const std::string& out_dir,
            long long seed, const std::string& spin, bool svg, bool si) {
  ScenarioConfig cfg;
  if (!config_path.empty()) {
    if (!preset.empty()) {
      std::cerr << "run: give either a preset name or --config, not both\n";
      return kExitUsage;
    }
    cfg = parse_config(config_path);
  } else if (!preset.empty()) {
    cfg = preset_by_name(preset);
  } else {
    std::cerr << "run: a preset name or --config PATH is required\n";
    return kExitUsage;
  }
  if (si) apply_si_units(cfg);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (spin == "on") cfg.spin_on = true;
  if (spin == "off") cfg.spin_on = false;
  sync_ensemble_seed(cfg);

  const ScenarioResult result = run_scenario(cfg);
  const OutputBundle bundle = emit_csv(result, out_dir);
  if (svg) emit_svg(result, out_dir);

  std::printf("scenario %s: %zu trajectories, %d axis crossings, %d node aborts\n",
              cfg.name.c_str(), result.trajectories.size(), result.axis_crossings,
              result.node_aborts);
  for (const auto& g : result.gates)
    std::printf("  [%s] %-22s value=%-12g threshold=%-12g %s\n", g.pass ? "PASS" : "FAIL",
                g.name.c_str(), g.value, g.threshold, g.detail.c_str());
  std::printf("output written to %s\n", bundle.dir.string().c_str());
  return result.all_pass() ? kExitOk : kExitGateFailure;
}

int cmd_list_presets() {
  for (const auto& p : builtin_presets()) {
    std::string ensemble = "contour";
    if (std::holds_alternative<CanonicalRingsSpec>(p.ensemble)) ensemble = "canonical rings";
    if (std::holds_alternative<DensitySampleSpec>(p.ensemble)) ensemble = "density sample";
    std::printf("%-26s spin=%-3s ensemble=%-15s t1=%g gates:", p.name.c_str(),
                p.spin_on ? "on" : "off", ensemble.c_str(), p.integrator.t1);
    for (const auto& g : p.gates) std::printf(" %s", g.c_str());
    std::printf("\n");
  }
  return kExitOk;
}

int cmd_verify(const std::vector<int>& criteria) {
  const auto results = run_acceptance(criteria);
  const bool all = std::all_of(results.begin(), results.end(),
                               [](const CriterionResult& r) { return r.pass; });
  std::printf("%zu/%zu criteria passed\n",
              static_cast<std::size_t>(std::count_if(
                  results.begin(), results.end(),
                  [](const CriterionResult& r) { return r.pass; })),
              results.size());
  return all ? kExitOk : kExitGateFailure;
}

int cmd_plot(const std::string& result_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(result_dir);
  const fs::path manifest_path = dir / "manifest.json";
  std::ifstream mf(manifest_path);
  if (!mf) {
    std::cerr << "plot: cannot read " << manifest_path << "\n";
    return kExitUsage;
  }
  nlohmann::json manifest;
  mf >> manifest;
  const auto& kv = manifest.at("config");
  auto kv_num = [&](const char* key, double fallback) {
    return kv.contains(key) ? parse_double(kv.at(key).get<std::string>()) : fallback;
  };

  ScenarioConfig cfg;
  cfg.name = kv.at("scenario").get<std::string>();
  cfg.units.si = manifest.at("units").get<std::string>() == "si";
  if (cfg.units.si) {
    cfg.units.sigma0_m = kv_num("si.sigma0", cfg.units.sigma0_m);
    cfg.units.mass_kg = kv_num("si.mass", cfg.units.mass_kg);
    cfg.units.hbar_Js = kv_num("si.hbar", cfg.units.hbar_Js);
  }
  cfg.model.separation = kv_num("model.separation", 0.0);
  cfg.model.sigma0x = kv_num("model.sigma0x", 1.0);
  cfg.model.sigma0y = kv_num("model.sigma0y", 1.0);
  cfg.model.group_velocity = {kv_num("model.group-speed-x", 0.0),
                              kv_num("model.group-speed-y", 0.0)};

  // CSV values are in output units; map back to internal so the SVG writer
  // applies the same outbound conversion it uses at run time.
  std::vector<Trajectory> trajs = parse_trajectories_csv(dir / "trajectories.csv");
  const UnitScales& u = cfg.units;
  if (u.si) {
    for (auto& tr : trajs) {
      for (auto& s : tr.samples) {
        s.t = u.time_to_internal(s.t);
        s.x = {u.length_to_internal(s.x.x), u.length_to_internal(s.x.y)};
        s.v = {u.speed_to_internal(s.v.x), u.speed_to_internal(s.v.y)};
        s.speed = u.speed_to_internal(s.speed);
      }
    }
  }
  ScenarioResult result;
  result.config = cfg;
  result.trajectories = std::move(trajs);
  const auto files = emit_svg(result, dir);
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " - spin-extended quantum trajectory engine"};
  app.require_subcommand(1);

  std::string preset, config_path, spin, out_dir = "out", result_dir;
  long long seed = -1;
  bool svg = false, si = false;
  std::vector<int> criteria;

  auto* run = app.add_subcommand("run", "run a scenario preset or config file");
  run->add_option("preset", preset, "preset name (see list-presets)");
  run->add_option("--config", config_path, "scenario config file");
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--spin", spin, "override the guidance mode")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_flag("--svg", svg, "also emit SVG plots");
  run->add_flag("--si", si, "use the SI unit anchors");

  app.add_subcommand("list-presets", "list the built-in scenario presets");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("criteria", criteria, "criterion ids to run (default: all)")
      ->check(CLI::Range(1, kNumCriteria));

  auto* plot = app.add_subcommand("plot", "render SVG plots from a result directory");
  plot->add_option("result-dir", result_dir, "directory with trajectories.csv + manifest.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("run")) return cmd_run(preset, config_path, out_dir, seed, spin, svg, si);
    if (app.got_subcommand("list-presets")) return cmd_list_presets();
    if (app.got_subcommand("verify")) return cmd_verify(criteria);
    if (app.got_subcommand("plot")) return cmd_plot(result_dir);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
