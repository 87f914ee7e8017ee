#ifndef SPINTRAJ_SCENARIOS_HPP
#define SPINTRAJ_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spintraj/analysis.hpp"
#include "spintraj/ensemble.hpp"
#include "spintraj/integrator.hpp"
#include "spintraj/units.hpp"
#include "spintraj/wavefunction.hpp"

namespace spintraj {

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Declarative model description in internal units (half-widths of the
/// reference packet = 1).
struct ModelSpec {
  bool plane = false;
  Vec2 wavevector;            // plane-wave fixture
  double sigma0x = 1.0;
  double sigma0y = 1.0;
  double separation = 0.0;    // 2a > 0: two packets at (0, +-a)
  Vec2 group_velocity;

  WaveModel build(const PhysicalConstants& constants) const;
};

/// SI scale anchors; active when `si` is set. The numeric core always runs
/// in internal units: lengths are measured in sigma0, speeds in 2w (so the
/// characteristic speed w maps to 0.5) and times in 1/(2 gamma).
struct UnitScales {
  bool si = false;
  double sigma0_m = 2e-8;
  double mass_kg = 9.1093837015e-31;
  double hbar_Js = 1.054571817e-34;
  double c_m_s = 2.99792458e8;

  double gamma_si() const { return hbar_Js / (2.0 * mass_kg * sigma0_m * sigma0_m); }
  double w_si() const { return gamma_si() * sigma0_m; }

  double length_to_internal(double meters) const { return meters / sigma0_m; }
  double speed_to_internal(double mps) const { return mps / (2.0 * w_si()); }
  double time_to_internal(double seconds) const { return seconds * 2.0 * gamma_si(); }
  double length_out(double internal) const { return si ? internal * sigma0_m : internal; }
  double speed_out(double internal) const { return si ? internal * 2.0 * w_si() : internal; }
  double time_out(double internal) const { return si ? internal / (2.0 * gamma_si()) : internal; }
};

struct ScenarioConfig {
  std::string name;
  PhysicalConstants constants;
  UnitScales units;
  ModelSpec model;
  EnsembleSpec ensemble = UniformContourSpec{};
  bool spin_on = true;
  bool spin_up = true;
  std::vector<double> boost_multiples;  // extra boosted families (in units of w)
  IntegratorConfig integrator;
  std::uint64_t seed = 1;
  double snapshot_time = -1.0;  // < 0: integrator.t1
  int fringe_bins = 25;
  std::vector<std::string> gates;

  void validate() const;
  /// Canonical flat key=value serialization (sorted keys); used for the
  /// manifest echo and the provenance hash.
  std::vector<std::pair<std::string, std::string>> to_kv() const;
};

struct GateResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<Trajectory> trajectories;
  std::vector<GateResult> gates;
  std::vector<std::pair<std::string, HistogramReport>> reports;
  int axis_crossings = 0;
  int node_aborts = 0;
  int subluminal_warnings = 0;
  std::string version;
  std::uint64_t config_hash = 0;

  bool all_pass() const;
};

/// The built-in figure-analogue presets, in canonical order:
/// fig2-catherine-wheel, fig3-boosted, fig4-asymmetric-product,
/// fig5-superposition, fig6-two-slit-nospin, fig7-two-slit-spin,
/// fig8-speed-ratio.
std::vector<ScenarioConfig> builtin_presets();

/// Looks up a preset by name; throws ValidationError on unknown names.
ScenarioConfig preset_by_name(const std::string& name);

/// Switches a config to SI anchors: recomputes c_ratio from the scales and
/// replaces the two-slit group speed with the literal SI default (1e8 m/s).
void apply_si_units(ScenarioConfig& config);

ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace spintraj

#endif
