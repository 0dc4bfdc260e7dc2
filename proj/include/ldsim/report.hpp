#pragma once

#include <string>
#include <vector>

#include "ldsim/scenario.hpp"
#include "ldsim/simulator.hpp"
#include "ldsim/thermal.hpp"

namespace ldsim {

/// Machine-readable flight report (JSON) and the matching aligned
/// human table. Every scalar in the JSON can be recomputed from the
/// telemetry CSV.
std::string run_report_json(const RunReport& report);
std::string run_report_table(const RunReport& report);

std::string comparison_report_json(const ProfileComparison& profiles,
                                   const VerticalComparison& vertical);
std::string comparison_report_table(const ProfileComparison& profiles,
                                    const VerticalComparison& vertical);

std::string monte_carlo_csv(const MonteCarloResult& result);
std::string monte_carlo_report_json(const MonteCarloResult& result);
std::string monte_carlo_report_table(const MonteCarloResult& result);

/// Sweep cells whose equilibrium temperature falls outside a component's
/// allowed band.
struct SweepFlag {
  double power = 0.0;        // [W]
  double emissivity = 0.0;
  double equilibrium_k = 0.0;
  std::string component;     // first violated component
  bool too_hot = false;
};

struct SweepReport {
  double annotate_power = 0.0;
  double annotate_emissivity = 0.0;
  double annotated_equilibrium_k = 0.0;  // closed form at the marked cell
  double annotated_delta_k = 0.0;        // integrated rise at the marked cell
  bool annotated_found = false;
  std::vector<SweepFlag> flagged;
};

/// Finds the highlighted cell and checks every cell against the
/// component limits (empty list disables the check).
SweepReport evaluate_sweep(const ThermalSweepResult& sweep,
                           const SweepSettings& settings,
                           const std::vector<ComponentLimit>& limits);

std::string sweep_report_json(const ThermalSweepResult& sweep,
                              const SweepReport& report);
std::string sweep_report_table(const ThermalSweepResult& sweep,
                               const SweepReport& report);

/// All budget calculator outputs for one configuration.
struct BudgetReport {
  double battery_wh = 0.0;
  double refill_kg = 0.0;
  double refuel_minutes = 0.0;
  double tank_volume_l = 0.0;
  double tank_capacity_kg = 0.0;
  int refills_from_stock = 0;
  int total_flights = 0;          // refills plus the initial load
  double flight_distance_m = 0.0; // ground distance per flight
  double accumulated_km = 0.0;
  double data_total_gb = 0.0;
  bool data_fits = false;
  double data_headroom_gb = 0.0;
  double sample_spacing_m = 0.0;
  bool spacing_exceeds_resolution = false;
  double standby_power_w = 0.0;
  bool cross_checked = false;     // telemetry was available
  double flown_propellant_kg = 0.0;
  bool cross_check_ok = true;     // flown <= budgeted per flight
};

BudgetReport evaluate_budget(const BudgetSettings& budget,
                             double flight_distance_m);

/// Folds a flown propellant figure into the report cross-check.
void apply_cross_check(BudgetReport& report, const BudgetSettings& budget,
                       double flown_propellant_kg);

std::string budget_report_json(const BudgetReport& report,
                               const BudgetSettings& budget);
std::string budget_report_table(const BudgetReport& report,
                                const BudgetSettings& budget);

}  // namespace ldsim
