#include "spintraj/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace spintraj {

namespace {

// Fixed-precision coordinate formatting keeps the byte output deterministic.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Box {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  void include(double x, double y) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
};

double nice_step(double range, int target_ticks) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0;
  if (norm <= 1.0) step = 1.0;
  else if (norm <= 2.0) step = 2.0;
  else if (norm <= 5.0) step = 5.0;
  return step * mag;
}

const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

class Plot {
 public:
  Plot(const SvgStyle& style, Box data, std::string x_label, std::string y_label)
      : style_(style), box_(data), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {
    const double padx = 0.05 * (box_.xhi - box_.xlo + 1e-12);
    const double pady = 0.05 * (box_.yhi - box_.ylo + 1e-12);
    box_.xlo -= padx;
    box_.xhi += padx;
    box_.ylo -= pady;
    box_.yhi += pady;
  }

  double px(double x) const {
    return style_.margin + (x - box_.xlo) / (box_.xhi - box_.xlo) *
                               (style_.width - 2 * style_.margin);
  }
  double py(double y) const {
    return style_.height - style_.margin -
           (y - box_.ylo) / (box_.yhi - box_.ylo) * (style_.height - 2 * style_.margin);
  }

  void header(std::string& out) const {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style_.width) +
           "\" height=\"" + std::to_string(style_.height) + "\" viewBox=\"0 0 " +
           std::to_string(style_.width) + " " + std::to_string(style_.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void axes(std::string& out) const {
    const double x0 = style_.margin, x1 = style_.width - style_.margin;
    const double y0 = style_.height - style_.margin, y1 = style_.margin;
    out += "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
    out += "<path d=\"M " + fmt(x0) + " " + fmt(y0) + " L " + fmt(x1) + " " + fmt(y0) + "\"/>\n";
    out += "<path d=\"M " + fmt(x0) + " " + fmt(y0) + " L " + fmt(x0) + " " + fmt(y1) + "\"/>\n";
    out += "</g>\n";
    out += "<g font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
    const double sx = nice_step(box_.xhi - box_.xlo, 6);
    for (double v = std::ceil(box_.xlo / sx) * sx; v <= box_.xhi + 1e-12; v += sx) {
      out += "<line x1=\"" + fmt(px(v)) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(px(v)) +
             "\" y2=\"" + fmt(y0 + 5) + "\" stroke=\"#333333\"/>\n";
      out += "<text x=\"" + fmt(px(v)) + "\" y=\"" + fmt(y0 + 18) +
             "\" text-anchor=\"middle\">" + fmt_label(v) + "</text>\n";
    }
    const double sy = nice_step(box_.yhi - box_.ylo, 6);
    for (double v = std::ceil(box_.ylo / sy) * sy; v <= box_.yhi + 1e-12; v += sy) {
      out += "<line x1=\"" + fmt(x0 - 5) + "\" y1=\"" + fmt(py(v)) + "\" x2=\"" + fmt(x0) +
             "\" y2=\"" + fmt(py(v)) + "\" stroke=\"#333333\"/>\n";
      out += "<text x=\"" + fmt(x0 - 8) + "\" y=\"" + fmt(py(v) + 4) +
             "\" text-anchor=\"end\">" + fmt_label(v) + "</text>\n";
    }
    out += "<text x=\"" + fmt(0.5 * (x0 + x1)) + "\" y=\"" + fmt(y0 + 36) +
           "\" text-anchor=\"middle\">" + x_label_ + "</text>\n";
    out += "<text x=\"" + fmt(14.0) + "\" y=\"" + fmt(0.5 * (y0 + y1)) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " + fmt(0.5 * (y0 + y1)) +
           ")\">" + y_label_ + "</text>\n";
    out += "</g>\n";
  }

  void polyline(std::string& out, const std::vector<std::pair<double, double>>& pts,
                const char* color, double width, const char* dash = nullptr) const {
    if (pts.empty()) return;
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"" + fmt(width) + "\"";
    if (dash) {
      out += " stroke-dasharray=\"";
      out += dash;
      out += "\"";
    }
    out += " points=\"";
    for (const auto& [x, y] : pts) out += fmt(px(x)) + "," + fmt(py(y)) + " ";
    out += "\"/>\n";
  }

 private:
  SvgStyle style_;
  Box box_;
  std::string x_label_;
  std::string y_label_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

}  // namespace

void write_trajectory_svg(const std::vector<Trajectory>& trajectories,
                          const ScenarioConfig& config, const std::filesystem::path& file,
                          const SvgStyle& style) {
  const UnitScales& u = config.units;
  Box box;
  bool any = false;
  for (const auto& tr : trajectories) {
    for (const auto& s : tr.samples) {
      if (!any) {
        box = {u.length_out(s.x.x), u.length_out(s.x.x), u.length_out(s.x.y),
               u.length_out(s.x.y)};
        any = true;
      } else {
        box.include(u.length_out(s.x.x), u.length_out(s.x.y));
      }
    }
  }

  const std::string unit = u.si ? "m" : "sigma0";
  Plot plot(style, box, "x [" + unit + "]", "y [" + unit + "]");
  std::string out;
  plot.header(out);
  plot.axes(out);

  if (any && style.density_contours && !config.model.plane && config.model.separation == 0.0) {
    // dashed t = 0 density contours at 1 and 2 half-widths
    for (double scale : {1.0, 2.0}) {
      std::vector<std::pair<double, double>> ring;
      for (int i = 0; i <= 128; ++i) {
        const double phi = 2.0 * kPi * i / 128;
        ring.emplace_back(u.length_out(scale * config.model.sigma0x * std::cos(phi)),
                          u.length_out(scale * config.model.sigma0y * std::sin(phi)));
      }
      plot.polyline(out, ring, "#bbbbbb", 0.8, "4 3");
    }
  }

  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(trajectories[i].samples.size());
    for (const auto& s : trajectories[i].samples)
      pts.emplace_back(u.length_out(s.x.x), u.length_out(s.x.y));
    plot.polyline(out, pts, kPalette[i % 8], style.stroke_width);
  }
  out += "</svg>\n";
  write_file(file, out);
}

void write_speed_ratio_svg(const std::vector<Trajectory>& trajectories,
                           const ScenarioConfig& config, const std::filesystem::path& file,
                           const SvgStyle& style) {
  const UnitScales& u = config.units;
  const Vec2 gv = config.model.group_velocity;
  const double gnorm = std::max(gv.norm(), 1e-300);
  Box box;
  bool any = false;
  for (const auto& tr : trajectories) {
    for (const auto& s : tr.samples) {
      const double ratio = (s.v - gv).norm() / gnorm;
      if (!any) {
        box = {u.time_out(s.t), u.time_out(s.t), 0.0, ratio};
        any = true;
      } else {
        box.include(u.time_out(s.t), ratio);
      }
    }
  }
  const std::string unit = u.si ? "s" : "1/(2 gamma)";
  Plot plot(style, box, "t [" + unit + "]", "|v - u| / |u|");
  std::string out;
  plot.header(out);
  plot.axes(out);
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : trajectories[i].samples)
      pts.emplace_back(u.time_out(s.t), (s.v - gv).norm() / gnorm);
    plot.polyline(out, pts, kPalette[i % 8], style.stroke_width);
  }
  out += "</svg>\n";
  write_file(file, out);
}

std::vector<std::filesystem::path> emit_svg(const ScenarioResult& result,
                                            const std::filesystem::path& out_dir,
                                            const SvgStyle& style) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> files;
  const auto traj_file = out_dir / (result.config.name + "-trajectories.svg");
  write_trajectory_svg(result.trajectories, result.config, traj_file, style);
  files.push_back(traj_file);
  if (result.config.model.group_velocity.norm() > 0.0 && result.config.model.separation > 0.0) {
    const auto ratio_file = out_dir / (result.config.name + "-speed-ratio.svg");
    write_speed_ratio_svg(result.trajectories, result.config, ratio_file, style);
    files.push_back(ratio_file);
  }
  return files;
}

}  // namespace spintraj
