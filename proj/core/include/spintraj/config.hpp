#ifndef SPINTRAJ_CONFIG_HPP
#define SPINTRAJ_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "spintraj/scenarios.hpp"

namespace spintraj {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the flat `key = value` scenario format: one pair per line, `#`
/// comments, `[section]` headers prefixing keys as `section.key`. The
/// `scenario` key selects a preset; every other key overrides it. Unknown
/// keys are hard errors. Physical values are read in units of the declared
/// system: lengths in sigma0 / meters, speeds in w / (m/s), times in
/// 1/gamma / seconds.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

/// Propagates the scenario seed into seeded ensemble specs.
void sync_ensemble_seed(ScenarioConfig& config);

}  // namespace spintraj

#endif
