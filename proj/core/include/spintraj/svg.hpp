#ifndef SPINTRAJ_SVG_HPP
#define SPINTRAJ_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "spintraj/scenarios.hpp"

namespace spintraj {

struct SvgStyle {
  int width = 900;
  int height = 700;
  double margin = 64.0;
  double stroke_width = 1.0;
  bool density_contours = true;  // dashed t = 0 contour rings for packet models
};

/// Self-contained deterministic vector plot of trajectory polylines with
/// axes and tick labels. Axis labels name the active unit system.
void write_trajectory_svg(const std::vector<Trajectory>& trajectories,
                          const ScenarioConfig& config, const std::filesystem::path& file,
                          const SvgStyle& style = {});

/// Rest-frame speed over group speed along each trajectory, against time.
void write_speed_ratio_svg(const std::vector<Trajectory>& trajectories,
                           const ScenarioConfig& config, const std::filesystem::path& file,
                           const SvgStyle& style = {});

/// Emits the figure analogues for a scenario result into out_dir; returns
/// the files written.
std::vector<std::filesystem::path> emit_svg(const ScenarioResult& result,
                                            const std::filesystem::path& out_dir,
                                            const SvgStyle& style = {});

}  // namespace spintraj

#endif
