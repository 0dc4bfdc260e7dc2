#include "ldsim/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ldsim/constants.hpp"
#include "ldsim/engine.hpp"
#include "ldsim/fault.hpp"

namespace ldsim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config " + path + ": " + what);
}

const json* find(const json& node, const char* key) {
  auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

void check_keys(const json& node, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!node.is_object()) fail(path, "expected an object");
  for (auto it = node.begin(); it != node.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + it.key(), "unknown key");
  }
}

void read(const json& node, const std::string& path, const char* key,
          double& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_number()) fail(path + "." + key, "expected a number");
    out = v->get<double>();
  }
}

void read_deg(const json& node, const std::string& path, const char* key,
              double& out_rad) {
  double deg = out_rad * 180.0 / kPi;
  read(node, path, key, deg);
  out_rad = deg * kPi / 180.0;
}

void read(const json& node, const std::string& path, const char* key,
          int& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_number_integer()) fail(path + "." + key, "expected an integer");
    out = v->get<int>();
  }
}

void read(const json& node, const std::string& path, const char* key,
          std::uint64_t& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_number_unsigned() && !v->is_number_integer()) {
      fail(path + "." + key, "expected a non-negative integer");
    }
    if (v->is_number_integer() && v->get<std::int64_t>() < 0) {
      fail(path + "." + key, "expected a non-negative integer");
    }
    out = v->get<std::uint64_t>();
  }
}

void read(const json& node, const std::string& path, const char* key,
          bool& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
    out = v->get<bool>();
  }
}

void read(const json& node, const std::string& path, const char* key,
          std::string& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_string()) fail(path + "." + key, "expected a string");
    out = v->get<std::string>();
  }
}

void read(const json& node, const std::string& path, const char* key,
          std::vector<double>& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_array()) fail(path + "." + key, "expected an array of numbers");
    std::vector<double> values;
    for (const json& item : *v) {
      if (!item.is_number()) {
        fail(path + "." + key, "expected an array of numbers");
      }
      values.push_back(item.get<double>());
    }
    out = std::move(values);
  }
}

void read(const json& node, const std::string& path, const char* key,
          Vec3& out) {
  if (const json* v = find(node, key)) {
    if (!v->is_array() || v->size() != 3) {
      fail(path + "." + key, "expected an array of three numbers");
    }
    for (int i = 0; i < 3; ++i) {
      const json& item = (*v)[static_cast<std::size_t>(i)];
      if (!item.is_number()) {
        fail(path + "." + key, "expected an array of three numbers");
      }
      out[i] = item.get<double>();
    }
  }
}

void parse_pid(const json& node, const std::string& path, PidGains& out) {
  check_keys(node, path,
             {"kp", "ki", "kd", "integral_limit", "output_limit",
              "derivative_tau"});
  read(node, path, "kp", out.kp);
  read(node, path, "ki", out.ki);
  read(node, path, "kd", out.kd);
  read(node, path, "integral_limit", out.integral_limit);
  read(node, path, "output_limit", out.output_limit);
  read(node, path, "derivative_tau", out.derivative_tau);
}

void parse_sim(const json& node, SimConfig& out) {
  check_keys(node, "sim", {"dt", "max_duration", "seed"});
  read(node, "sim", "dt", out.dt);
  read(node, "sim", "max_duration", out.max_duration);
  read(node, "sim", "seed", out.seed);
}

void parse_world(const json& node, WorldModel& out) {
  check_keys(node, "world", {"gravity", "ambient_pressure", "ground_height"});
  read(node, "world", "gravity", out.gravity);
  read(node, "world", "ambient_pressure", out.ambient_pressure);
  read(node, "world", "ground_height", out.ground_height);
}

void parse_engine(const json& node, EngineSpec& out, double& target_isp) {
  check_keys(node, "engine",
             {"gamma", "chamber_temperature", "throat_diameter",
              "exit_diameter", "specific_gas_constant", "flow_min", "flow_max",
              "valve_time_constant", "min_impulse_bit", "thrust_efficiency",
              "target_isp"});
  read(node, "engine", "gamma", out.gamma);
  read(node, "engine", "chamber_temperature", out.chamber_temperature);
  read(node, "engine", "throat_diameter", out.throat_diameter);
  read(node, "engine", "exit_diameter", out.exit_diameter);
  read(node, "engine", "specific_gas_constant", out.specific_gas_constant);
  read(node, "engine", "flow_min", out.flow_min);
  read(node, "engine", "flow_max", out.flow_max);
  read(node, "engine", "valve_time_constant", out.valve_time_constant);
  read(node, "engine", "min_impulse_bit", out.min_impulse_bit);
  read(node, "engine", "thrust_efficiency", out.thrust_efficiency);
  read(node, "engine", "target_isp", target_isp);
}

void parse_vehicle(const json& node, VehicleSpec& out) {
  check_keys(node, "vehicle",
             {"wet_mass", "propellant_load", "dimensions", "arm_radius",
              "mount_height", "cant_angle_deg", "yaw_twist_deg",
              "azimuth_offset_deg"});
  read(node, "vehicle", "wet_mass", out.wet_mass);
  read(node, "vehicle", "propellant_load", out.propellant_load);
  read(node, "vehicle", "dimensions", out.dimensions);
  read(node, "vehicle", "arm_radius", out.arm_radius);
  read(node, "vehicle", "mount_height", out.mount_height);
  read_deg(node, "vehicle", "cant_angle_deg", out.cant_angle);
  read_deg(node, "vehicle", "yaw_twist_deg", out.yaw_twist);
  read_deg(node, "vehicle", "azimuth_offset_deg", out.azimuth_offset);
}

void parse_limits(const json& node, ControlLimits& out) {
  check_keys(node, "limits",
             {"max_tilt_deg", "max_horizontal_speed", "landing_speed_limit"});
  read_deg(node, "limits", "max_tilt_deg", out.max_tilt);
  read(node, "limits", "max_horizontal_speed", out.max_horizontal_speed);
  read(node, "limits", "landing_speed_limit", out.landing_speed_limit);
}

void parse_control(const json& node, ControllerGains& out) {
  check_keys(node, "control",
             {"horizontal", "altitude", "attitude", "yaw", "outer_period",
              "inner_period", "max_vertical_accel", "max_descent_accel",
              "idle_collective_fraction", "attitude_deadband", "rate_deadband",
              "terminal_descent_speed", "tilt_margin_fraction",
              "coast_torque_scale", "hold_position_gate"});
  if (const json* v = find(node, "horizontal")) {
    parse_pid(*v, "control.horizontal", out.horizontal);
  }
  if (const json* v = find(node, "altitude")) {
    parse_pid(*v, "control.altitude", out.altitude);
  }
  if (const json* v = find(node, "attitude")) {
    parse_pid(*v, "control.attitude", out.attitude);
  }
  if (const json* v = find(node, "yaw")) {
    parse_pid(*v, "control.yaw", out.yaw);
  }
  read(node, "control", "outer_period", out.outer_period);
  read(node, "control", "inner_period", out.inner_period);
  read(node, "control", "max_vertical_accel", out.max_vertical_accel);
  read(node, "control", "max_descent_accel", out.max_descent_accel);
  read(node, "control", "idle_collective_fraction",
       out.idle_collective_fraction);
  read(node, "control", "attitude_deadband", out.attitude_deadband);
  read(node, "control", "rate_deadband", out.rate_deadband);
  read(node, "control", "terminal_descent_speed", out.terminal_descent_speed);
  read(node, "control", "tilt_margin_fraction", out.tilt_margin_fraction);
  read(node, "control", "coast_torque_scale", out.coast_torque_scale);
  read(node, "control", "hold_position_gate", out.hold_position_gate);
}

void parse_estimator(const json& node, EstimatorConfig& out) {
  check_keys(node, "estimator",
             {"mode", "gyro_arw", "gyro_bias_sigma", "accel_bias_sigma",
              "calibration_residual"});
  std::string mode = out.mode == EstimatorMode::kIdeal ? "ideal" : "strapdown";
  read(node, "estimator", "mode", mode);
  if (mode == "ideal") {
    out.mode = EstimatorMode::kIdeal;
  } else if (mode == "strapdown") {
    out.mode = EstimatorMode::kStrapdown;
  } else {
    fail("estimator.mode", "expected 'ideal' or 'strapdown'");
  }
  read(node, "estimator", "gyro_arw", out.gyro_arw);
  read(node, "estimator", "gyro_bias_sigma", out.gyro_bias_sigma);
  read(node, "estimator", "accel_bias_sigma", out.accel_bias_sigma);
  read(node, "estimator", "calibration_residual", out.calibration_residual);
}

void parse_profile(const json& node, ProfileParams& out) {
  check_keys(node, "profile",
             {"kind", "horizontal_range", "round_trip", "cruise_altitude",
              "ballistic_apex", "vtol_height", "max_horizontal_speed",
              "cruise_accel", "climb_speed", "descent_speed", "vertical_accel",
              "boost_climb_accel", "boost_tilt_deg",
              "touchdown_vertical_speed", "sample_interval"});
  std::string kind = to_string(out.kind);
  read(node, "profile", "kind", kind);
  out.kind = profile_kind_from_string(kind);
  read(node, "profile", "horizontal_range", out.horizontal_range);
  read(node, "profile", "round_trip", out.round_trip);
  read(node, "profile", "cruise_altitude", out.cruise_altitude);
  read(node, "profile", "ballistic_apex", out.ballistic_apex);
  read(node, "profile", "vtol_height", out.vtol_height);
  read(node, "profile", "max_horizontal_speed", out.max_horizontal_speed);
  read(node, "profile", "cruise_accel", out.cruise_accel);
  read(node, "profile", "climb_speed", out.climb_speed);
  read(node, "profile", "descent_speed", out.descent_speed);
  read(node, "profile", "vertical_accel", out.vertical_accel);
  read(node, "profile", "boost_climb_accel", out.boost_climb_accel);
  read_deg(node, "profile", "boost_tilt_deg", out.boost_tilt);
  read(node, "profile", "touchdown_vertical_speed",
       out.touchdown_vertical_speed);
  read(node, "profile", "sample_interval", out.sample_interval);
}

void parse_thermal(const json& node, ThermalBody& body, HeatLoad& heat) {
  check_keys(node, "thermal",
             {"mass", "heat_capacity", "surface_area", "emissivity",
              "absorptivity", "sink_temperature", "initial_temperature",
              "generated_power"});
  read(node, "thermal", "mass", body.mass);
  read(node, "thermal", "heat_capacity", body.heat_capacity);
  read(node, "thermal", "surface_area", body.surface_area);
  read(node, "thermal", "emissivity", body.emissivity);
  read(node, "thermal", "absorptivity", body.absorptivity);
  read(node, "thermal", "sink_temperature", body.sink_temperature);
  read(node, "thermal", "initial_temperature", body.initial_temperature);
  read(node, "thermal", "generated_power", heat.generated);
}

void parse_sweep(const json& node, SweepSettings& out) {
  check_keys(node, "sweep",
             {"power_grid", "emissivity_grid", "elapsed", "dt",
              "annotate_power", "annotate_emissivity",
              "component_limits_file"});
  read(node, "sweep", "power_grid", out.power_grid);
  read(node, "sweep", "emissivity_grid", out.emissivity_grid);
  read(node, "sweep", "elapsed", out.elapsed);
  read(node, "sweep", "dt", out.dt);
  read(node, "sweep", "annotate_power", out.annotate_power);
  read(node, "sweep", "annotate_emissivity", out.annotate_emissivity);
  read(node, "sweep", "component_limits_file", out.component_limits_file);
}

void parse_budget(const json& node, BudgetSettings& out) {
  check_keys(node, "budget",
             {"propellant", "power", "data", "station", "mapping_speed",
              "sample_rate"});
  if (const json* v = find(node, "propellant")) {
    const std::string p = "budget.propellant";
    check_keys(*v, p,
               {"per_flight_mass", "margin", "factor_of_safety",
                "propellant_density", "tank_pressure", "pressurant_pressure",
                "sizing_factor", "ullage_fraction", "pressurant_mass"});
    read(*v, p, "per_flight_mass", out.propellant.per_flight_mass);
    read(*v, p, "margin", out.propellant.margin);
    read(*v, p, "factor_of_safety", out.propellant.factor_of_safety);
    read(*v, p, "propellant_density", out.propellant.propellant_density);
    read(*v, p, "tank_pressure", out.propellant.tank_pressure);
    read(*v, p, "pressurant_pressure", out.propellant.pressurant_pressure);
    read(*v, p, "sizing_factor", out.propellant.sizing_factor);
    read(*v, p, "ullage_fraction", out.propellant.ullage_fraction);
    read(*v, p, "pressurant_mass", out.propellant.pressurant_mass);
  }
  if (const json* v = find(node, "power")) {
    const std::string p = "budget.power";
    check_keys(*v, p,
               {"flight_power", "sized_duration", "depth_of_discharge",
                "cycles", "conversion_efficiency"});
    read(*v, p, "flight_power", out.power.flight_power);
    read(*v, p, "sized_duration", out.power.sized_duration);
    read(*v, p, "depth_of_discharge", out.power.depth_of_discharge);
    read(*v, p, "cycles", out.power.cycles);
    read(*v, p, "conversion_efficiency", out.power.conversion_efficiency);
  }
  if (const json* v = find(node, "data")) {
    const std::string p = "budget.data";
    check_keys(*v, p,
               {"raw_per_flight", "compression_ratio", "flights",
                "station_storage"});
    read(*v, p, "raw_per_flight", out.data.raw_per_flight);
    read(*v, p, "compression_ratio", out.data.compression_ratio);
    read(*v, p, "flights", out.data.flights);
    read(*v, p, "station_storage", out.data.station_storage);
  }
  if (const json* v = find(node, "station")) {
    const std::string p = "budget.station";
    check_keys(*v, p,
               {"battery_mass", "specific_energy", "standby_hours",
                "refuel_flow", "refueling_subsystem_mass", "propellant_stock",
                "flights_supported", "solar_array_area"});
    read(*v, p, "battery_mass", out.station.battery_mass);
    read(*v, p, "specific_energy", out.station.specific_energy);
    read(*v, p, "standby_hours", out.station.standby_hours);
    read(*v, p, "refuel_flow", out.station.refuel_flow);
    read(*v, p, "refueling_subsystem_mass",
         out.station.refueling_subsystem_mass);
    read(*v, p, "propellant_stock", out.station.propellant_stock);
    read(*v, p, "flights_supported", out.station.flights_supported);
    read(*v, p, "solar_array_area", out.station.solar_array_area);
  }
  read(node, "budget", "mapping_speed", out.mapping_speed);
  read(node, "budget", "sample_rate", out.sample_rate);
}

void parse_monte_carlo(const json& node, MonteCarloSettings& out) {
  check_keys(node, "monte_carlo", {"runs", "threads"});
  read(node, "monte_carlo", "runs", out.runs);
  read(node, "monte_carlo", "threads", out.threads);
}

void parse_output(const json& node, OutputSettings& out) {
  check_keys(node, "output",
             {"telemetry", "report_json", "report_text", "reference"});
  read(node, "output", "telemetry", out.telemetry);
  read(node, "output", "report_json", out.report_json);
  read(node, "output", "report_text", out.report_text);
  read(node, "output", "reference", out.reference);
}

}  // namespace

void SweepSettings::validate() const {
  if (power_grid.empty() || emissivity_grid.empty()) {
    throw ConfigError("sweep grids must not be empty");
  }
  if (elapsed <= 0.0 || dt <= 0.0) {
    throw ConfigError("sweep elapsed and dt must be > 0");
  }
  for (double e : emissivity_grid) {
    if (e <= 0.0 || e > 1.0) {
      throw ConfigError("sweep emissivity grid values must lie in (0, 1]");
    }
  }
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError(origin + ": top level must be an object");
  }
  check_keys(root, origin,
             {"name", "sim", "world", "engine", "vehicle", "limits", "control",
              "estimator", "profile", "thermal", "sweep", "budget",
              "monte_carlo", "output"});

  Scenario s;
  read(root, origin, "name", s.flight.name);
  if (const json* v = find(root, "sim")) parse_sim(*v, s.flight.sim);
  if (const json* v = find(root, "world")) parse_world(*v, s.flight.world);
  if (const json* v = find(root, "engine")) {
    parse_engine(*v, s.flight.engine, s.target_isp);
  }
  if (const json* v = find(root, "vehicle")) {
    parse_vehicle(*v, s.flight.vehicle);
  }
  if (const json* v = find(root, "limits")) parse_limits(*v, s.flight.limits);
  if (const json* v = find(root, "control")) {
    parse_control(*v, s.flight.gains);
  }
  if (const json* v = find(root, "estimator")) {
    parse_estimator(*v, s.flight.estimator);
  }
  if (const json* v = find(root, "profile")) {
    parse_profile(*v, s.flight.profile);
  }
  if (const json* v = find(root, "thermal")) {
    parse_thermal(*v, s.thermal, s.heat);
  }
  if (const json* v = find(root, "sweep")) parse_sweep(*v, s.sweep);
  if (const json* v = find(root, "budget")) parse_budget(*v, s.budget);
  if (const json* v = find(root, "monte_carlo")) {
    parse_monte_carlo(*v, s.monte_carlo);
  }
  if (const json* v = find(root, "output")) parse_output(*v, s.output);

  if (s.target_isp > 0.0) {
    s.flight.engine = calibrate_engine(s.flight.engine, s.target_isp);
  }
  s.flight.engine.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::vector<ComponentLimit> load_component_limits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open component limits file '" + path + "'");
  std::vector<ComponentLimit> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string subsystem;
    std::string component;
    std::string lo;
    std::string hi;
    std::getline(row, subsystem, ',');
    std::getline(row, component, ',');
    std::getline(row, lo, ',');
    std::getline(row, hi, ',');
    if (lo.empty() || hi.empty()) continue;
    char* end = nullptr;
    ComponentLimit limit;
    limit.subsystem = subsystem;
    limit.component = component;
    limit.min_c = std::strtod(lo.c_str(), &end);
    if (end == lo.c_str()) continue;
    limit.max_c = std::strtod(hi.c_str(), &end);
    if (end == hi.c_str()) continue;
    out.push_back(limit);
  }
  return out;
}

}  // namespace ldsim
