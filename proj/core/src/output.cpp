#include "spintraj/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spintraj/format.hpp"
#include "spintraj/version.hpp"

namespace spintraj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string event_kind_name(Event::Kind k) {
  switch (k) {
    case Event::Kind::axis_crossing: return "axis-crossing";
    case Event::Kind::node_abort: return "node-abort";
    case Event::Kind::subluminal_warning: return "subluminal-warning";
  }
  return "unknown";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double json_number_or_null(double v, ordered_json& slot) {
  if (std::isnan(v)) {
    slot = nullptr;
  } else {
    slot = v;
  }
  return v;
}

}  // namespace

OutputBundle emit_csv(const ScenarioResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const UnitScales& u = result.config.units;

  std::string traj_csv = "traj_id,t,x,y,vx,vy,speed\n";
  for (std::size_t id = 0; id < result.trajectories.size(); ++id) {
    for (const auto& s : result.trajectories[id].samples) {
      traj_csv += std::to_string(id);
      traj_csv += ',';
      traj_csv += format_double(u.time_out(s.t));
      traj_csv += ',';
      traj_csv += format_double(u.length_out(s.x.x));
      traj_csv += ',';
      traj_csv += format_double(u.length_out(s.x.y));
      traj_csv += ',';
      traj_csv += format_double(u.speed_out(s.v.x));
      traj_csv += ',';
      traj_csv += format_double(u.speed_out(s.v.y));
      traj_csv += ',';
      traj_csv += format_double(u.speed_out(s.speed));
      traj_csv += '\n';
    }
  }

  std::string events_csv = "traj_id,kind,t,x,y\n";
  for (std::size_t id = 0; id < result.trajectories.size(); ++id) {
    std::vector<Event> events = result.trajectories[id].events;
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    for (const auto& e : events) {
      events_csv += std::to_string(id);
      events_csv += ',';
      events_csv += event_kind_name(e.kind);
      events_csv += ',';
      events_csv += format_double(u.time_out(e.t));
      events_csv += ',';
      events_csv += format_double(u.length_out(e.x.x));
      events_csv += ',';
      events_csv += format_double(u.length_out(e.x.y));
      events_csv += '\n';
    }
  }

  std::string reports;
  {
    ordered_json summary;
    summary["type"] = "summary";
    summary["scenario"] = result.config.name;
    summary["trajectories"] = result.trajectories.size();
    summary["axis_crossings"] = result.axis_crossings;
    summary["node_aborts"] = result.node_aborts;
    summary["subluminal_warnings"] = result.subluminal_warnings;
    summary["all_gates_pass"] = result.all_pass();
    reports += summary.dump() + "\n";
    for (const auto& g : result.gates) {
      ordered_json j;
      j["type"] = "gate";
      j["name"] = g.name;
      j["pass"] = g.pass;
      j["value"] = g.value;
      j["threshold"] = g.threshold;
      j["detail"] = g.detail;
      reports += j.dump() + "\n";
    }
    for (const auto& [name, rep] : result.reports) {
      ordered_json j;
      j["type"] = "histogram";
      j["name"] = name;
      j["bin_edges"] = rep.bin_edges;
      j["counts"] = rep.counts;
      j["test_statistic"] = rep.test_statistic;
      json_number_or_null(rep.p_value, j["p_value"]);
      reports += j.dump() + "\n";
    }
  }

  OutputBundle bundle;
  bundle.dir = out_dir;
  const std::vector<std::pair<std::string, const std::string*>> files = {
      {"trajectories.csv", &traj_csv}, {"events.csv", &events_csv}, {"reports.jsonl", &reports}};

  ordered_json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["seed"] = result.config.seed;
  manifest["units"] = u.si ? "si" : "dimensionless";
  manifest["config_hash"] = hex64(result.config_hash);
  ordered_json cfg;
  for (const auto& [k, v] : result.config.to_kv()) cfg[k] = v;
  manifest["config"] = cfg;
  ordered_json jfiles;
  for (const auto& [name, content] : files) {
    write_file(out_dir / name, *content);
    ordered_json meta;
    meta["bytes"] = content->size();
    meta["fnv1a64"] = hex64(fnv1a64(*content));
    jfiles[name] = meta;
    bundle.files.emplace_back(name, hex64(fnv1a64(*content)));
  }
  manifest["files"] = jfiles;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return bundle;
}

std::vector<Trajectory> parse_trajectories_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "traj_id,t,x,y,vx,vy,speed")
    throw std::runtime_error("trajectories.csv: unexpected header");
  std::vector<Trajectory> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string, 7> fields;
    std::size_t pos = 0;
    for (int i = 0; i < 7; ++i) {
      const auto comma = line.find(',', pos);
      if (comma == std::string::npos && i < 6)
        throw std::runtime_error("trajectories.csv: short row");
      fields[i] = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma + 1;
    }
    const std::size_t id = std::stoul(fields[0]);
    if (id >= out.size()) out.resize(id + 1);
    TrajectorySample s;
    s.t = parse_double(fields[1]);
    s.x = {parse_double(fields[2]), parse_double(fields[3])};
    s.v = {parse_double(fields[4]), parse_double(fields[5])};
    s.speed = parse_double(fields[6]);
    if (out[id].samples.empty()) out[id].initial = s.x;
    out[id].samples.push_back(s);
  }
  return out;
}

std::vector<EventRow> parse_events_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "traj_id,kind,t,x,y")
    throw std::runtime_error("events.csv: unexpected header");
  std::vector<EventRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string, 5> fields;
    std::size_t pos = 0;
    for (int i = 0; i < 5; ++i) {
      const auto comma = line.find(',', pos);
      fields[i] = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma + 1;
    }
    EventRow row;
    row.traj_id = std::stoi(fields[0]);
    row.kind = fields[1];
    row.t = parse_double(fields[2]);
    row.x = {parse_double(fields[3]), parse_double(fields[4])};
    out.push_back(row);
  }
  return out;
}

bool verify_manifest(const std::filesystem::path& out_dir) {
  const auto manifest = nlohmann::json::parse(read_file(out_dir / "manifest.json"));
  for (const auto& [name, meta] : manifest.at("files").items()) {
    const std::string content = read_file(out_dir / name);
    if (meta.at("bytes").get<std::size_t>() != content.size()) return false;
    if (meta.at("fnv1a64").get<std::string>() != hex64(fnv1a64(content))) return false;
  }
  return true;
}

}  // namespace spintraj
