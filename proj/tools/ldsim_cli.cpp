#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ldsim/report.hpp"
#include "ldsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace ldsim;

namespace {

struct CommonArgs {
  std::string config;
  std::string out_dir = ".";
  std::string profile;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int runs = 0;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Scenario config file (JSON)");
  cmd->add_option("--out-dir", args.out_dir, "Directory for output artifacts");
  cmd->add_option("--profile", args.profile,
                  "Override the flight profile (ballistic, constant_altitude, "
                  "combined, semi_ballistic)");
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&args](const std::uint64_t& v) {
        args.seed = v;
        args.seed_set = true;
      },
      "Override the random seed");
  cmd->add_option("--runs", args.runs, "Number of Monte Carlo runs");
  cmd->add_option("--threads", args.threads,
                  "Worker threads (0 = hardware concurrency)");
}

Scenario load(const CommonArgs& args) {
  Scenario s = args.config.empty() ? parse_scenario("{}", "defaults")
                                   : load_scenario(args.config);
  if (!args.profile.empty()) {
    s.flight.profile.kind = profile_kind_from_string(args.profile);
  }
  if (args.seed_set) s.flight.sim.seed = args.seed;
  return s;
}

fs::path out_path(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  return fs::path(args.out_dir) / name;
}

std::string reference_csv(const ReferenceTrajectory& traj) {
  std::ostringstream out;
  out << "t,x,y,z,vx,vy,vz,ax,ay,az,phase\n";
  for (const ReferencePoint& p : traj.points) {
    out << format_g9(p.t);
    for (int i = 0; i < 3; ++i) out << ',' << format_g9(p.position[i]);
    for (int i = 0; i < 3; ++i) out << ',' << format_g9(p.velocity[i]);
    for (int i = 0; i < 3; ++i) out << ',' << format_g9(p.acceleration[i]);
    out << ',' << to_string(p.hint) << '\n';
  }
  return out.str();
}

int cmd_fly(const CommonArgs& args) {
  Scenario s = load(args);
  TelemetryLog log;
  RunReport report;
  try {
    report = simulate_flight(s.flight, &log);
  } catch (const SimFault& fault) {
    // Keep whatever was recorded, with the fault appended after the
    // data so the file stays parseable up to the failure.
    std::string partial = log.to_csv();
    partial += "# fault: ";
    partial += fault.what();
    partial += '\n';
    write_file_atomic(out_path(args, s.output.telemetry), partial);
    throw;
  }
  log.save_csv(out_path(args, s.output.telemetry));
  if (!s.output.reference.empty()) {
    ReferenceLimits limits{s.flight.limits.max_tilt,
                           s.flight.limits.max_horizontal_speed};
    ReferenceTrajectory ref =
        generate_profile(s.flight.profile, s.flight.world, limits);
    write_file_atomic(out_path(args, s.output.reference), reference_csv(ref));
  }
  write_file_atomic(out_path(args, s.output.report_json),
                    run_report_json(report));
  std::string table = run_report_table(report);
  write_file_atomic(out_path(args, s.output.report_text), table);
  std::cout << table;
  return report.exit_code;
}

int cmd_compare(const CommonArgs& args) {
  Scenario s = load(args);
  ProfileComparison profiles = run_profile_comparison(s.flight);
  VerticalComparison vertical = run_vertical_comparison(s.flight);
  write_file_atomic(out_path(args, "comparison.json"),
                    comparison_report_json(profiles, vertical));
  std::string table = comparison_report_table(profiles, vertical);
  write_file_atomic(out_path(args, "comparison.txt"), table);
  std::cout << table;
  return profiles.complete && vertical.complete ? 0 : 1;
}

int cmd_thermal(const CommonArgs& args) {
  Scenario s = load(args);
  s.sweep.validate();
  s.thermal.validate();
  ThermalSweepResult sweep =
      thermal_sweep(s.sweep.power_grid, s.sweep.emissivity_grid,
                    s.sweep.elapsed, s.thermal, s.sweep.dt);
  std::vector<ComponentLimit> limits;
  std::string limits_note;
  if (!s.sweep.component_limits_file.empty()) {
    if (fs::exists(s.sweep.component_limits_file)) {
      limits = load_component_limits(s.sweep.component_limits_file);
    } else {
      limits_note = "component limits file not found, check skipped: " +
                    s.sweep.component_limits_file + "\n";
    }
  }
  SweepReport report = evaluate_sweep(sweep, s.sweep, limits);
  write_file_atomic(out_path(args, "sweep_delta.csv"),
                    sweep_matrix_csv(sweep, sweep.delta_t));
  write_file_atomic(out_path(args, "sweep_equilibrium.csv"),
                    sweep_matrix_csv(sweep, sweep.equilibrium));
  write_file_atomic(out_path(args, "thermal.json"),
                    sweep_report_json(sweep, report));
  std::string table = sweep_report_table(sweep, report) + limits_note;
  write_file_atomic(out_path(args, "thermal.txt"), table);
  std::cout << table;
  return 0;
}

int cmd_monte_carlo(const CommonArgs& args) {
  Scenario s = load(args);
  int runs = args.runs > 0 ? args.runs : s.monte_carlo.runs;
  int threads = args.threads > 0 ? args.threads : s.monte_carlo.threads;
  MonteCarloResult result =
      run_monte_carlo_landing(s.flight, runs, threads);
  write_file_atomic(out_path(args, "landing_dispersion.csv"),
                    monte_carlo_csv(result));
  write_file_atomic(out_path(args, "landing_dispersion.json"),
                    monte_carlo_report_json(result));
  std::string table = monte_carlo_report_table(result);
  write_file_atomic(out_path(args, "landing_dispersion.txt"), table);
  std::cout << table;
  return 0;
}

int cmd_budget(const CommonArgs& args) {
  Scenario s = load(args);
  BudgetReport report =
      evaluate_budget(s.budget, s.flight.profile.horizontal_range);
  fs::path telemetry = fs::path(args.out_dir) / s.output.telemetry;
  if (fs::exists(telemetry)) {
    TelemetryLog log = TelemetryLog::load_csv(telemetry);
    if (!log.empty()) {
      apply_cross_check(report, s.budget,
                        log.records().back().propellant_used);
    }
  }
  write_file_atomic(out_path(args, "budget.json"),
                    budget_report_json(report, s.budget));
  std::string table = budget_report_table(report, s.budget);
  write_file_atomic(out_path(args, "budget.txt"), table);
  std::cout << table;
  return report.cross_checked && !report.cross_check_ok ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flight dynamics and mission sizing for a thruster-borne "
               "lunar reconnaissance drone"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* fly = app.add_subcommand("fly", "Run one closed-loop flight");
  CLI::App* compare = app.add_subcommand(
      "compare-profiles", "Fly every profile and compare propellant use");
  CLI::App* thermal = app.add_subcommand(
      "thermal-sweep", "Radiative heat balance over a power/emissivity grid");
  CLI::App* monte_carlo = app.add_subcommand(
      "monte-carlo-landing", "Landing dispersion with a noisy estimator");
  CLI::App* budget =
      app.add_subcommand("budget", "Mission sizing and endurance budgets");
  for (CLI::App* cmd : {fly, compare, thermal, monte_carlo, budget}) {
    add_common(cmd, args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (fly->parsed()) return cmd_fly(args);
    if (compare->parsed()) return cmd_compare(args);
    if (thermal->parsed()) return cmd_thermal(args);
    if (monte_carlo->parsed()) return cmd_monte_carlo(args);
    if (budget->parsed()) return cmd_budget(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const SimFault& e) {
    std::cerr << "simulation fault: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
