#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldsim/control.hpp"
#include "ldsim/engine.hpp"
#include "ldsim/estimator.hpp"
#include "ldsim/telemetry.hpp"
#include "ldsim/trajectory.hpp"

namespace ldsim {

/// Physical build of the drone: masses, box envelope, thruster geometry.
struct VehicleSpec {
  double wet_mass = 15.0;         // [kg] at takeoff
  double propellant_load = 2.232; // [kg] usable on board
  Vec3 dimensions{0.45, 0.48, 0.378};
  double arm_radius = 0.20;
  double mount_height = 0.189;
  double cant_angle = 45.0 * kPi / 180.0;
  double yaw_twist = 45.0 * kPi / 180.0;
  double azimuth_offset = 45.0 * kPi / 180.0;

  void validate() const;
};

/// Everything one closed-loop flight needs.
struct FlightScenario {
  std::string name = "run";
  SimConfig sim;
  WorldModel world;
  EngineSpec engine;
  VehicleSpec vehicle;
  ControllerGains gains;
  ControlLimits limits;
  EstimatorConfig estimator;
  ProfileParams profile;
};

struct TouchdownReport {
  bool touched = false;
  double impact_speed = 0.0;
  double vertical_speed = 0.0;
  double misalignment = 0.0;
  bool hard = false;
};

struct RunReport {
  std::string scenario;
  std::string profile;
  std::uint64_t seed = 0;
  int run_index = 0;
  bool nominal = false;
  std::string abort_reason;
  double flight_time = 0.0;
  double reference_duration = 0.0;
  double propellant_used = 0.0;
  double total_impulse = 0.0;      // left-Riemann sum of total thrust
  double firing_time = 0.0;        // time with any valve commanded open
  double average_thrust = 0.0;     // impulse / firing time
  double max_pitch_deg = 0.0;
  double max_roll_deg = 0.0;
  double max_horizontal_speed = 0.0;
  double max_altitude = 0.0;
  double cruise_altitude_error = 0.0;  // max |z - cruise alt| in Cruise
  TouchdownReport touchdown;
  std::map<std::string, double> phase_durations;
  long saturated_steps = 0;
  long suppressed_pulses = 0;
  int exit_code = 1;
};

/// Runs one closed-loop flight. `run_index` selects the noise substream
/// so batches can pair styles run-for-run. Telemetry is appended to
/// `log` when provided.
RunReport simulate_flight(const FlightScenario& scenario, TelemetryLog* log,
                          int run_index = 0);

/// Recompute the CSV-derivable report scalars from telemetry rows using
/// the same accumulation order as the simulator. `cruise_altitude` feeds
/// the cruise error; pad is the intended landing point.
struct RecomputedReport {
  double flight_time = 0.0;
  double propellant_used = 0.0;
  double total_impulse = 0.0;
  double firing_time = 0.0;
  double average_thrust = 0.0;
  double max_pitch_deg = 0.0;
  double max_roll_deg = 0.0;
  double max_horizontal_speed = 0.0;
  double max_altitude = 0.0;
  double cruise_altitude_error = 0.0;
  double touchdown_misalignment = 0.0;
  std::map<std::string, double> phase_durations;
};

RecomputedReport recompute_from_telemetry(
    const std::vector<TelemetryRecord>& rows, double cruise_altitude,
    const Vec3& pad);

struct ProfileComparison {
  std::vector<RunReport> runs;   // ballistic, constant altitude, combined
  bool complete = false;
  bool ordering_ok = false;      // propellant strictly ordered
  double combined_saving = 0.0;  // vs constant altitude, fraction
  bool average_thrust_between = false;
};

/// Flies the three survey profiles over the same vehicle and range.
ProfileComparison run_profile_comparison(const FlightScenario& base);

struct VerticalComparison {
  RunReport semi_ballistic;
  RunReport vertical;
  double saving = 0.0;  // semi-ballistic vs fully vertical, fraction
  bool complete = false;
};

/// Same mission flown with semi-ballistic versus fully vertical TOL.
VerticalComparison run_vertical_comparison(const FlightScenario& base);

struct MonteCarloRow {
  int run = 0;
  std::string style;
  double misalignment = 0.0;
  double impact_speed = 0.0;
  bool hard = false;
  bool aborted = false;
};

struct MonteCarloStats {
  std::string style;
  int runs = 0;
  int aborted = 0;
  int hard_landings = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double max = 0.0;
};

struct MonteCarloResult {
  std::vector<MonteCarloRow> rows;
  MonteCarloStats ballistic;
  MonteCarloStats semi;
};

/// Paired landing-style dispersion study: each run index flies the
/// mission twice, once committing to the ballistic arc all the way to
/// ground contact and once with the vertical terminal hop, sharing the
/// same noise substream.
MonteCarloResult run_monte_carlo_landing(const FlightScenario& base,
                                         int n_runs, int threads = 0);

}  // namespace ldsim
