#include "spintraj/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "spintraj/format.hpp"

namespace spintraj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawEntry {
  std::string value;
  int line = 0;
};

double to_double(const std::string& key, const RawEntry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
  }
}

long long to_int(const std::string& key, const RawEntry& e) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
  }
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  std::map<std::string, RawEntry> entries;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError(lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (value.empty()) throw ParseError(lineno, "empty value for key '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (entries.count(full)) throw ParseError(lineno, "duplicate key '" + full + "'");
    entries[full] = {value, lineno};
  }

  const auto scenario_it = entries.find("scenario");
  if (scenario_it == entries.end())
    throw ValidationError("scenario", "missing (a preset name is required)");
  ScenarioConfig cfg = preset_by_name(scenario_it->second.value);
  entries.erase(scenario_it);

  // SI anchors first, then the units switch, then physical overrides (which
  // are interpreted in the declared system).
  if (auto it = entries.find("si.sigma0"); it != entries.end()) {
    cfg.units.sigma0_m = to_double(it->first, it->second);
    if (!(cfg.units.sigma0_m > 0.0)) throw ValidationError("si.sigma0", "must be > 0");
    entries.erase(it);
  }
  if (auto it = entries.find("si.mass"); it != entries.end()) {
    cfg.units.mass_kg = to_double(it->first, it->second);
    if (!(cfg.units.mass_kg > 0.0)) throw ValidationError("si.mass", "must be > 0");
    entries.erase(it);
  }
  if (auto it = entries.find("si.hbar"); it != entries.end()) {
    cfg.units.hbar_Js = to_double(it->first, it->second);
    if (!(cfg.units.hbar_Js > 0.0)) throw ValidationError("si.hbar", "must be > 0");
    entries.erase(it);
  }
  bool si = false;
  if (auto it = entries.find("units"); it != entries.end()) {
    if (it->second.value == "si") {
      si = true;
    } else if (it->second.value != "dimensionless") {
      throw ValidationError("units", "expected 'dimensionless' or 'si'");
    }
    entries.erase(it);
  }
  if (si) apply_si_units(cfg);

  const UnitScales& u = cfg.units;
  auto length_in = [&](double v) { return si ? u.length_to_internal(v) : v; };
  auto speed_in = [&](double v) {
    return si ? u.speed_to_internal(v) : v * cfg.constants.characteristic_speed(1.0);
  };
  auto time_in = [&](double v) { return si ? u.time_to_internal(v) : v / cfg.constants.gamma(1.0); };

  for (const auto& [key, entry] : entries) {
    if (key == "seed") {
      const long long v = to_int(key, entry);
      if (v < 0) throw ValidationError("seed", "must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "spin") {
      if (entry.value == "on")
        cfg.spin_on = true;
      else if (entry.value == "off")
        cfg.spin_on = false;
      else
        throw ValidationError("spin", "expected 'on' or 'off'");
    } else if (key == "model.sigma0x") {
      cfg.model.sigma0x = length_in(to_double(key, entry));
    } else if (key == "model.sigma0y") {
      cfg.model.sigma0y = length_in(to_double(key, entry));
    } else if (key == "model.group-speed-x") {
      cfg.model.group_velocity.x = speed_in(to_double(key, entry));
    } else if (key == "model.group-speed-y") {
      cfg.model.group_velocity.y = speed_in(to_double(key, entry));
    } else if (key == "two-slit.separation") {
      const double v = to_double(key, entry);
      if (v < 0.0) throw ValidationError("two-slit.separation", "must be >= 0");
      cfg.model.separation = length_in(v);
    } else if (key == "two-slit.group-speed") {
      cfg.model.group_velocity.x = speed_in(to_double(key, entry));
    } else if (key == "ensemble.count") {
      auto* contour = std::get_if<UniformContourSpec>(&cfg.ensemble);
      if (!contour) throw ValidationError("ensemble.count", "preset has no contour ensemble");
      contour->count = static_cast<int>(to_int(key, entry));
    } else if (key == "ensemble.contour-scale") {
      auto* contour = std::get_if<UniformContourSpec>(&cfg.ensemble);
      if (!contour)
        throw ValidationError("ensemble.contour-scale", "preset has no contour ensemble");
      contour->scale = length_in(to_double(key, entry));
    } else if (key == "ensemble.reference-count") {
      auto* rings = std::get_if<CanonicalRingsSpec>(&cfg.ensemble);
      if (!rings) throw ValidationError("ensemble.reference-count", "preset has no ring ensemble");
      rings->rings.reference_count = static_cast<int>(to_int(key, entry));
    } else if (key == "ensemble.ring-radius") {
      // moves a single-ring ensemble (the speed-ratio study) onto another
      // density contour, e.g. ring-radius = 1 for the sigma0 variant
      auto* rings = std::get_if<CanonicalRingsSpec>(&cfg.ensemble);
      if (!rings || rings->rings.radii.size() != 1)
        throw ValidationError("ensemble.ring-radius", "preset has no single-ring ensemble");
      const double r = length_in(to_double(key, entry));
      if (!(r > 0.0)) throw ValidationError("ensemble.ring-radius", "must be > 0");
      rings->rings.radii = {r};
      rings->rings.reference_radius = r;
    } else if (key == "ensemble.sample-count") {
      const long long n = to_int(key, entry);
      if (n < 1) throw ValidationError("ensemble.sample-count", "must be >= 1");
      cfg.ensemble = DensitySampleSpec{static_cast<int>(n), cfg.seed};
    } else if (key == "integrator.rel-tol") {
      cfg.integrator.rel_tol = to_double(key, entry);
    } else if (key == "integrator.abs-tol") {
      cfg.integrator.abs_tol = to_double(key, entry);
    } else if (key == "integrator.t-final") {
      cfg.integrator.t1 = time_in(to_double(key, entry));
    } else if (key == "integrator.max-step") {
      cfg.integrator.max_step = time_in(to_double(key, entry));
    } else if (key == "integrator.stride") {
      cfg.integrator.dense_output_stride = time_in(to_double(key, entry));
    } else if (key == "analysis.snapshot-time") {
      cfg.snapshot_time = time_in(to_double(key, entry));
    } else if (key == "analysis.fringe-bins") {
      cfg.fringe_bins = static_cast<int>(to_int(key, entry));
    } else {
      throw ValidationError(key, "unknown key");
    }
  }

  sync_ensemble_seed(cfg);
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void sync_ensemble_seed(ScenarioConfig& config) {
  if (auto* ds = std::get_if<DensitySampleSpec>(&config.ensemble)) ds->seed = config.seed;
}

}  // namespace spintraj
