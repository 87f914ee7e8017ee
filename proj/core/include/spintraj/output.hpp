#ifndef SPINTRAJ_OUTPUT_HPP
#define SPINTRAJ_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "spintraj/scenarios.hpp"

namespace spintraj {

struct OutputBundle {
  std::filesystem::path dir;
  // file name -> fnv1a64 content hash (hex), as recorded in the manifest
  std::vector<std::pair<std::string, std::string>> files;
};

/// Writes trajectories.csv, events.csv, reports.jsonl and manifest.json.
/// Trajectory and event columns are in the active unit system; floats use
/// the shortest round-trip decimal form. Rows are sorted by (traj_id, t).
OutputBundle emit_csv(const ScenarioResult& result, const std::filesystem::path& out_dir);

/// Reads back a trajectories.csv file (values in file units, bit-exact).
std::vector<Trajectory> parse_trajectories_csv(const std::filesystem::path& path);

struct EventRow {
  int traj_id = 0;
  std::string kind;
  double t = 0.0;
  Vec2 x;
};
std::vector<EventRow> parse_events_csv(const std::filesystem::path& path);

/// Recomputes content hashes of the files listed in a bundle's manifest and
/// checks them against the recorded values.
bool verify_manifest(const std::filesystem::path& out_dir);

}  // namespace spintraj

#endif
