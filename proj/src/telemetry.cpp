#include "ldsim/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ldsim/fault.hpp"

namespace ldsim {

namespace {

void require_finite(double v, double t, const char* what) {
  if (!std::isfinite(v)) throw SimFault(std::string("non-finite ") + what, t);
}

}  // namespace

void TelemetryLog::append(const TelemetryRecord& rec) {
  require_finite(rec.t, rec.t, "time");
  for (double v : rec.position) require_finite(v, rec.t, "position");
  for (double v : rec.velocity) require_finite(v, rec.t, "velocity");
  for (double v : rec.quaternion) require_finite(v, rec.t, "quaternion");
  for (double v : rec.angular_rate) require_finite(v, rec.t, "angular rate");
  require_finite(rec.wet_mass, rec.t, "mass");
  if (!records_.empty()) {
    const TelemetryRecord& prev = records_.back();
    if (!(rec.t > prev.t)) throw SimFault("telemetry time not increasing", rec.t);
    if (rec.wet_mass > prev.wet_mass + 1e-12)
      throw SimFault("telemetry mass increased", rec.t);
    if (rec.propellant_used < prev.propellant_used - 1e-12)
      throw SimFault("telemetry propellant counter decreased", rec.t);
  }
  records_.push_back(rec);
}

const char* TelemetryLog::csv_header() {
  return "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,mass,"
         "cmd_flow_0,cmd_flow_1,cmd_flow_2,cmd_flow_3,"
         "flow_0,flow_1,flow_2,flow_3,"
         "thrust_0,thrust_1,thrust_2,thrust_3,"
         "propellant_used,phase,flags";
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string TelemetryLog::to_csv() const {
  std::string out;
  out.reserve(records_.size() * 320 + 256);
  out += csv_header();
  out += '\n';
  for (const TelemetryRecord& r : records_) {
    out += format_g9(r.t);
    for (double v : r.position) { out += ','; out += format_g9(v); }
    for (double v : r.velocity) { out += ','; out += format_g9(v); }
    for (double v : r.quaternion) { out += ','; out += format_g9(v); }
    for (double v : r.angular_rate) { out += ','; out += format_g9(v); }
    out += ','; out += format_g9(r.wet_mass);
    for (double v : r.commanded_flow) { out += ','; out += format_g9(v); }
    for (double v : r.actual_flow) { out += ','; out += format_g9(v); }
    for (double v : r.thrust) { out += ','; out += format_g9(v); }
    out += ','; out += format_g9(r.propellant_used);
    out += ','; out += r.phase;
    out += ','; out += std::to_string(r.flags);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

void TelemetryLog::save_csv(const std::filesystem::path& path) const {
  write_file_atomic(path, to_csv());
}

TelemetryLog TelemetryLog::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open telemetry file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

TelemetryLog TelemetryLog::parse_csv(const std::string& text) {
  TelemetryLog log;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty telemetry CSV");
  if (line != csv_header()) throw ConfigError("unexpected telemetry CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 30)
      throw ConfigError("telemetry CSV row has " + std::to_string(cells.size()) +
                        " columns, expected 30");
    auto num = [&cells](std::size_t i) { return std::stod(cells[i]); };
    TelemetryRecord r;
    std::size_t i = 0;
    r.t = num(i++);
    for (double& v : r.position) v = num(i++);
    for (double& v : r.velocity) v = num(i++);
    for (double& v : r.quaternion) v = num(i++);
    for (double& v : r.angular_rate) v = num(i++);
    r.wet_mass = num(i++);
    for (double& v : r.commanded_flow) v = num(i++);
    for (double& v : r.actual_flow) v = num(i++);
    for (double& v : r.thrust) v = num(i++);
    r.propellant_used = num(i++);
    r.phase = cells[i++];
    r.flags = static_cast<std::uint32_t>(std::stoul(cells[i++]));
    log.records_.push_back(r);
  }
  return log;
}

}  // namespace ldsim
