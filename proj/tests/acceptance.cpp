// Acceptance gate for the flight dynamics and mission sizing stack.
// Every check prints one aligned PASS/FAIL line with the measured
// numbers; the process exits nonzero if any check fails. Run it from
// the repository root so the shipped configs resolve.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ldsim/budget.hpp"
#include "ldsim/engine.hpp"
#include "ldsim/report.hpp"
#include "ldsim/rigid_body.hpp"
#include "ldsim/rng.hpp"
#include "ldsim/scenario.hpp"
#include "ldsim/simulator.hpp"
#include "ldsim/thermal.hpp"
#include "ldsim/valve.hpp"

using namespace ldsim;

namespace {

int g_failures = 0;

std::string str(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

void report_line(bool ok, const char* name, const std::string& detail) {
  std::printf("[%s] %-42s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
}

void check_nozzle_inversion() {
  RandomStream rng(2026);
  auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double ar = rng.uniform(1.5, 300.0);
    double gamma = rng.uniform(1.1, 1.6);
    double mach = solve_exit_mach(ar, gamma);
    double expo = (gamma + 1.0) / (2.0 * (gamma - 1.0));
    double back =
        std::pow(2.0 / (gamma + 1.0) * (1.0 + 0.5 * (gamma - 1.0) * mach * mach),
                 expo) /
        mach;
    worst = std::max(worst, std::abs(back - ar) / ar);
  }
  double secs = seconds_since(t0);
  report_line(worst < 1e-9 && secs < 1.0, "nozzle expansion inversion",
              str("worst residual %.3g rel, 1000 solves in %.3f s", worst,
                  secs));
}

void check_engine_band() {
  EngineSpec spec;
  EngineModel engine(calibrate_engine(spec, 231.5));
  double isp_lo = engine.vacuum_isp(4.1e-3);
  double isp_mid = engine.vacuum_isp(9.0e-3);
  double isp_hi = engine.vacuum_isp(14.0e-3);
  double f_lo = engine.thrust(4.1e-3, 0.0);
  double f_hi = engine.thrust(14.0e-3, 0.0);
  bool ok = true;
  for (double isp : {isp_lo, isp_mid, isp_hi}) {
    ok = ok && isp >= 228.0 && isp <= 235.0;
  }
  ok = ok && f_lo >= 9.0 && f_lo <= 11.5 && f_hi >= 30.0 && f_hi <= 36.0;
  report_line(ok, "calibrated engine performance band",
              str("isp %.2f..%.2f s, thrust %.3f / %.3f N", isp_lo, isp_hi,
                  f_lo, f_hi));
}

void check_valve_response() {
  const double tau = 0.090;
  const double dt = 1e-4;
  ThrusterState valve;
  double pct_90ms = 0.0;
  double pct_450ms = 0.0;
  for (int k = 0; k < 4500; ++k) {
    valve_update(valve, 1.0, dt, tau);
    int step = k + 1;
    if (step == 900) pct_90ms = valve.actual_flow * 100.0;
    if (step == 4500) pct_450ms = valve.actual_flow * 100.0;
  }
  bool ok = std::abs(pct_90ms - 63.2) <= 0.5 && std::abs(pct_450ms - 99.3) <= 0.2;
  report_line(ok, "valve first order step response",
              str("%.3f%% at 90 ms, %.3f%% at 450 ms", pct_90ms, pct_450ms));
}

void check_coast_energy() {
  RigidBodyState state;
  state.position = Vec3(0.0, 0.0, 200.0);
  state.velocity = Vec3(12.0, -3.0, 18.0);
  state.angular_rate = Vec3(0.1, -0.2, 0.05);
  InertiaModel inertia;
  WorldModel world;
  BodyWrench none;

  double e0 = specific_energy(state, world);
  double dt = 0.005;
  double worst = 0.0;
  for (int k = 0; k < 6000; ++k) {
    state = step_rigid_body(state, none, 0.0, inertia, world, k * dt, dt);
    worst = std::max(worst,
                     std::abs(specific_energy(state, world) - e0) / std::abs(e0));
  }
  report_line(worst < 1e-6, "ballistic coast energy drift",
              str("%.3g rel over 30 s at dt 5 ms", worst));
}

void check_profile_ordering(const Scenario& s) {
  auto t0 = Clock::now();
  ProfileComparison cmp = run_profile_comparison(s.flight);
  double secs = seconds_since(t0);
  double saving_pct = cmp.combined_saving * 100.0;
  bool ok = cmp.complete && cmp.ordering_ok && saving_pct >= 18.0 &&
            saving_pct <= 30.0 && cmp.average_thrust_between && secs < 30.0;
  report_line(
      ok, "survey profile propellant ordering",
      str("prop %.3f < %.3f < %.3f kg, combined saves %.1f%%, %.1f s",
          cmp.runs[0].propellant_used, cmp.runs[2].propellant_used,
          cmp.runs[1].propellant_used, saving_pct, secs));
}

void check_vertical_saving(const Scenario& s) {
  VerticalComparison cmp = run_vertical_comparison(s.flight);
  double saving_pct = cmp.saving * 100.0;
  bool ok = cmp.complete && saving_pct >= 10.0;
  report_line(ok, "semi ballistic launch and landing saving",
              str("%.3f vs %.3f kg, saves %.1f%%",
                  cmp.semi_ballistic.propellant_used,
                  cmp.vertical.propellant_used, saving_pct));
}

void check_mission_envelope() {
  Scenario s = load_scenario("configs/mission_800m.json");
  auto t0 = Clock::now();
  RunReport rep = simulate_flight(s.flight, nullptr);
  double secs = seconds_since(t0);
  bool ok = rep.nominal && rep.flight_time >= 105.0 &&
            rep.flight_time <= 175.0 && rep.propellant_used <= 1.86 &&
            rep.cruise_altitude_error <= 2.0 && rep.max_pitch_deg <= 24.0 &&
            rep.max_horizontal_speed <= 17.5 && secs < 10.0;
  report_line(ok, "round trip mission envelope",
              str("time %.1f s, prop %.3f kg, err %.2f m, pitch %.1f deg, "
                  "speed %.1f m/s, %.1f s",
                  rep.flight_time, rep.propellant_used,
                  rep.cruise_altitude_error, rep.max_pitch_deg,
                  rep.max_horizontal_speed, secs));
}

void check_landing_dispersion() {
  Scenario s = load_scenario("configs/mc_landing.json");
  auto t0 = Clock::now();
  MonteCarloResult mc = run_monte_carlo_landing(s.flight, s.monte_carlo.runs,
                                                s.monte_carlo.threads);
  double secs = seconds_since(t0);
  bool ok = mc.ballistic.mean < 1.0 && mc.semi.mean < mc.ballistic.mean &&
            mc.ballistic.aborted == 0 && mc.semi.aborted == 0 && secs < 120.0;
  report_line(ok, "paired landing dispersion",
              str("ballistic %.3f m, terminal hop %.3f m over %d runs, %.1f s",
                  mc.ballistic.mean, mc.semi.mean, s.monte_carlo.runs, secs));
}

void check_thermal_model() {
  ThermalBody body;
  HeatLoad load{500.0};
  double teq = equilibrium_temperature(load, body);

  double t_full = body.initial_temperature;
  for (int k = 0; k < 6000; ++k) t_full = temperature_step(t_full, body, load, 0.1);
  double t_half = body.initial_temperature;
  for (int k = 0; k < 12000; ++k) t_half = temperature_step(t_half, body, load, 0.05);
  double step_rel = rel_diff(t_full, t_half);

  SweepSettings settings;
  ThermalSweepResult sweep = thermal_sweep(
      settings.power_grid, settings.emissivity_grid, settings.elapsed, body,
      settings.dt);
  bool monotone = true;
  std::size_t np = sweep.power_grid.size();
  std::size_t ne = sweep.emissivity_grid.size();
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t p = 1; p < np; ++p) {
      monotone = monotone &&
                 sweep.at_equilibrium(p, e) > sweep.at_equilibrium(p - 1, e) &&
                 sweep.at_delta(p, e) > sweep.at_delta(p - 1, e);
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t e = 1; e < ne; ++e) {
      monotone = monotone &&
                 sweep.at_equilibrium(p, e) < sweep.at_equilibrium(p, e - 1);
    }
  }
  bool ok = std::abs(teq - 322.3) <= 0.5 && step_rel <= 1e-3 && monotone;
  report_line(ok, "thermal equilibrium and sweep",
              str("equilibrium %.2f K, step halving %.2g rel, grids %s", teq,
                  step_rel, monotone ? "monotone" : "non-monotone"));
}

void check_budgets() {
  BudgetSettings budget;
  BudgetReport rep = evaluate_budget(budget, 800.0);
  bool ok = std::abs(rep.battery_wh - 21.2) <= 1.0 &&
            std::abs(rep.refuel_minutes - 11.1) <= 0.5 &&
            std::abs(rep.data_total_gb - 225.5) <= 0.5 && rep.data_fits &&
            rep.sample_spacing_m == 0.1 && !rep.spacing_exceeds_resolution &&
            rep.total_flights == 11 &&
            std::abs(rep.accumulated_km - 8.8) <= 1e-9;
  report_line(ok, "station and vehicle budgets",
              str("battery %.2f Wh, refuel %.2f min, data %.1f GB, "
                  "spacing %.3f m, %d flights / %.1f km",
                  rep.battery_wh, rep.refuel_minutes, rep.data_total_gb,
                  rep.sample_spacing_m, rep.total_flights, rep.accumulated_km));
}

struct DeterminismResult {
  TelemetryLog log;
  RunReport report;
  double cruise_altitude = 0.0;
  double range = 0.0;
  bool ran = false;
};

void check_determinism(DeterminismResult& shared) {
  FlightScenario s = parse_scenario(R"({
    "estimator": {"mode": "strapdown"},
    "sim": {"seed": 17}
  })", "acceptance").flight;

  TelemetryLog log_a;
  TelemetryLog log_b;
  RunReport rep_a = simulate_flight(s, &log_a);
  simulate_flight(s, &log_b);

  namespace fs = std::filesystem;
  fs::path pa = fs::temp_directory_path() / "ldsim_accept_a.csv";
  fs::path pb = fs::temp_directory_path() / "ldsim_accept_b.csv";
  log_a.save_csv(pa);
  log_b.save_csv(pb);
  std::string bytes_a = slurp(pa);
  std::string bytes_b = slurp(pb);
  fs::remove(pa);
  fs::remove(pb);

  bool ok = rep_a.nominal && !bytes_a.empty() && bytes_a == bytes_b;
  report_line(ok, "telemetry byte determinism",
              str("%zu rows, %zu bytes, repeat %s", log_a.size(),
                  bytes_a.size(), bytes_a == bytes_b ? "identical" : "differs"));

  shared.log = std::move(log_a);
  shared.report = rep_a;
  shared.cruise_altitude = s.profile.cruise_altitude;
  shared.range = s.profile.horizontal_range;
  shared.ran = ok;
}

void check_report_recompute(const DeterminismResult& shared) {
  if (!shared.ran) {
    report_line(false, "report recompute from telemetry",
                "skipped, determinism flight unavailable");
    return;
  }
  Vec3 pad(shared.range, 0.0, 0.0);
  RecomputedReport re = recompute_from_telemetry(
      shared.log.records(), shared.cruise_altitude, pad);
  const RunReport& rep = shared.report;

  double worst = 0.0;
  auto fold = [&](double a, double b) { worst = std::max(worst, rel_diff(a, b)); };
  fold(re.flight_time, rep.flight_time);
  fold(re.propellant_used, rep.propellant_used);
  fold(re.total_impulse, rep.total_impulse);
  fold(re.firing_time, rep.firing_time);
  fold(re.average_thrust, rep.average_thrust);
  fold(re.max_pitch_deg, rep.max_pitch_deg);
  fold(re.max_roll_deg, rep.max_roll_deg);
  fold(re.max_horizontal_speed, rep.max_horizontal_speed);
  fold(re.max_altitude, rep.max_altitude);
  fold(re.cruise_altitude_error, rep.cruise_altitude_error);
  fold(re.touchdown_misalignment, rep.touchdown.misalignment);
  bool phases_ok = re.phase_durations.size() == rep.phase_durations.size();
  for (const auto& [phase, dur] : rep.phase_durations) {
    auto it = re.phase_durations.find(phase);
    if (it == re.phase_durations.end()) {
      phases_ok = false;
      continue;
    }
    fold(it->second, dur);
  }
  bool ok = phases_ok && worst <= 1e-9;
  report_line(ok, "report recompute from telemetry",
              str("worst scalar drift %.3g rel over %zu rows", worst,
                  shared.log.size()));
}

void guarded(const char* name, void (*fn)()) {
  try {
    fn();
  } catch (const std::exception& e) {
    report_line(false, name, str("exception: %s", e.what()));
  }
}

}  // namespace

int main() {
  guarded("nozzle expansion inversion", check_nozzle_inversion);
  guarded("calibrated engine performance band", check_engine_band);
  guarded("valve first order step response", check_valve_response);
  guarded("ballistic coast energy drift", check_coast_energy);

  try {
    Scenario profiles = load_scenario("configs/profiles_400m.json");
    check_profile_ordering(profiles);
    check_vertical_saving(profiles);
  } catch (const std::exception& e) {
    report_line(false, "survey profile propellant ordering",
                str("exception: %s", e.what()));
    report_line(false, "semi ballistic launch and landing saving",
                "skipped, shared scenario failed to load");
  }

  guarded("round trip mission envelope", check_mission_envelope);
  guarded("paired landing dispersion", check_landing_dispersion);
  guarded("thermal equilibrium and sweep", check_thermal_model);
  guarded("station and vehicle budgets", check_budgets);

  DeterminismResult shared;
  try {
    check_determinism(shared);
  } catch (const std::exception& e) {
    report_line(false, "telemetry byte determinism",
                str("exception: %s", e.what()));
  }
  try {
    check_report_recompute(shared);
  } catch (const std::exception& e) {
    report_line(false, "report recompute from telemetry",
                str("exception: %s", e.what()));
  }

  std::printf("%d of 12 checks passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
