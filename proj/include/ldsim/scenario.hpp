#pragma once

#include <string>
#include <vector>

#include "ldsim/budget.hpp"
#include "ldsim/simulator.hpp"
#include "ldsim/thermal.hpp"

namespace ldsim {

/// Grid settings for the radiative sweep plus the cell the report
/// highlights.
struct SweepSettings {
  std::vector<double> power_grid = {100.0, 200.0, 300.0, 400.0,
                                    500.0, 600.0, 700.0, 800.0};
  std::vector<double> emissivity_grid = {0.2, 0.4, 0.6, 0.8, 1.0};
  double elapsed = 600.0;
  double dt = 0.1;
  double annotate_power = 500.0;
  double annotate_emissivity = 0.8;
  std::string component_limits_file = "data/component_temp_limits.csv";

  void validate() const;
};

struct BudgetSettings {
  PropellantBudget propellant;
  PowerBudget power;
  DataBudget data;
  StationBudget station;
  double mapping_speed = 30.0;  // [m/s] for the sample spacing check
  double sample_rate = 300.0;   // [Hz]
};

struct MonteCarloSettings {
  int runs = 100;
  int threads = 0;  // 0 = hardware concurrency
};

struct OutputSettings {
  std::string telemetry = "telemetry.csv";
  std::string report_json = "report.json";
  std::string report_text = "report.txt";
  std::string reference = "";  // reference trajectory CSV, empty skips
};

/// Everything a run needs, loaded from one JSON file. Unknown keys are
/// rejected with their full path; missing sections fall back to the
/// defaults above and in the component headers.
struct Scenario {
  FlightScenario flight;
  double target_isp = 231.5;  // [s] engine calibration target, 0 keeps spec
  ThermalBody thermal;
  HeatLoad heat{500.0};
  SweepSettings sweep;
  BudgetSettings budget;
  MonteCarloSettings monte_carlo;
  OutputSettings output;
};

/// Parse a scenario from JSON text. `origin` names the source in
/// diagnostics. Applies engine calibration when target_isp > 0.
Scenario parse_scenario(const std::string& text, const std::string& origin);

/// Load and parse a scenario file.
Scenario load_scenario(const std::string& path);

/// Allowed operating band for one vehicle component, from the shipped
/// limits table.
struct ComponentLimit {
  std::string subsystem;
  std::string component;
  double min_c = 0.0;
  double max_c = 0.0;
};

/// Reads the component limits CSV (subsystem,component,min_c,max_c).
/// Rows without numeric limits are skipped.
std::vector<ComponentLimit> load_component_limits(const std::string& path);

}  // namespace ldsim
