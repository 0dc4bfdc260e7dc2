#include "ldsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ldsim {
namespace {

using nlohmann::json;

json touchdown_json(const TouchdownReport& td) {
  return json{{"touched", td.touched},
              {"impact_speed", td.impact_speed},
              {"vertical_speed", td.vertical_speed},
              {"misalignment", td.misalignment},
              {"hard", td.hard}};
}

json run_json(const RunReport& r) {
  json phases = json::object();
  for (const auto& [name, seconds] : r.phase_durations) {
    phases[name] = seconds;
  }
  return json{{"scenario", r.scenario},
              {"profile", r.profile},
              {"seed", r.seed},
              {"run_index", r.run_index},
              {"nominal", r.nominal},
              {"abort_reason", r.abort_reason},
              {"exit_code", r.exit_code},
              {"flight_time", r.flight_time},
              {"reference_duration", r.reference_duration},
              {"propellant_used", r.propellant_used},
              {"total_impulse", r.total_impulse},
              {"firing_time", r.firing_time},
              {"average_thrust", r.average_thrust},
              {"max_pitch_deg", r.max_pitch_deg},
              {"max_roll_deg", r.max_roll_deg},
              {"max_horizontal_speed", r.max_horizontal_speed},
              {"max_altitude", r.max_altitude},
              {"cruise_altitude_error", r.cruise_altitude_error},
              {"touchdown", touchdown_json(r.touchdown)},
              {"phase_durations", phases},
              {"saturated_steps", r.saturated_steps},
              {"suppressed_pulses", r.suppressed_pulses}};
}

void put(std::ostringstream& out, const char* label, const std::string& value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "  %-26s %s\n", label, value.c_str());
  out << buf;
}

std::string num(double v, const char* unit = "") {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%12.4f %s", v, unit);
  return buf;
}

void run_table_body(std::ostringstream& out, const RunReport& r) {
  put(out, "outcome", r.nominal ? "nominal"
                                : (r.abort_reason.empty() ? "hard landing"
                                                          : r.abort_reason));
  put(out, "flight time", num(r.flight_time, "s"));
  put(out, "propellant used", num(r.propellant_used, "kg"));
  put(out, "total impulse", num(r.total_impulse, "N s"));
  put(out, "firing time", num(r.firing_time, "s"));
  put(out, "average thrust", num(r.average_thrust, "N"));
  put(out, "max |pitch|", num(r.max_pitch_deg, "deg"));
  put(out, "max |roll|", num(r.max_roll_deg, "deg"));
  put(out, "max horizontal speed", num(r.max_horizontal_speed, "m/s"));
  put(out, "max altitude", num(r.max_altitude, "m"));
  put(out, "cruise altitude error", num(r.cruise_altitude_error, "m"));
  put(out, "touchdown misalignment", num(r.touchdown.misalignment, "m"));
  put(out, "touchdown speed", num(r.touchdown.impact_speed, "m/s"));
}

}  // namespace

std::string run_report_json(const RunReport& report) {
  return run_json(report).dump(2) + "\n";
}

std::string run_report_table(const RunReport& report) {
  std::ostringstream out;
  out << report.scenario << " (" << report.profile << ", seed "
      << report.seed << ")\n";
  run_table_body(out, report);
  for (const auto& [name, seconds] : report.phase_durations) {
    put(out, ("phase " + name).c_str(), num(seconds, "s"));
  }
  return out.str();
}

std::string comparison_report_json(const ProfileComparison& profiles,
                                   const VerticalComparison& vertical) {
  json runs = json::array();
  for (const RunReport& r : profiles.runs) runs.push_back(run_json(r));
  json j{{"runs", runs},
         {"complete", profiles.complete},
         {"ordering_ok", profiles.ordering_ok},
         {"combined_saving", profiles.combined_saving},
         {"average_thrust_between", profiles.average_thrust_between},
         {"vertical_tol",
          json{{"semi_ballistic", run_json(vertical.semi_ballistic)},
               {"vertical", run_json(vertical.vertical)},
               {"complete", vertical.complete},
               {"saving", vertical.saving}}}};
  return j.dump(2) + "\n";
}

std::string comparison_report_table(const ProfileComparison& profiles,
                                    const VerticalComparison& vertical) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %-18s %12s %12s %12s %10s\n", "profile",
                "propellant", "avg thrust", "firing time", "outcome");
  out << "profile comparison\n" << buf;
  for (const RunReport& r : profiles.runs) {
    std::snprintf(buf, sizeof buf, "  %-18s %9.4f kg %10.3f N %10.2f s %10s\n",
                  r.profile.c_str(), r.propellant_used, r.average_thrust,
                  r.firing_time, r.nominal ? "nominal" : "abort");
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "  combined vs constant altitude saving: %.1f%%\n",
                100.0 * profiles.combined_saving);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "  semi-ballistic vs vertical TOL saving: %.1f%%\n",
                100.0 * vertical.saving);
  out << buf;
  std::snprintf(buf, sizeof buf, "  semi-ballistic %9.4f kg, vertical %9.4f kg\n",
                vertical.semi_ballistic.propellant_used,
                vertical.vertical.propellant_used);
  out << buf;
  return out.str();
}

std::string monte_carlo_csv(const MonteCarloResult& result) {
  std::ostringstream out;
  out << "run,style,misalignment_m,impact_speed_mps,hard,aborted\n";
  for (const MonteCarloRow& r : result.rows) {
    out << r.run << ',' << r.style << ',' << format_g9(r.misalignment) << ','
        << format_g9(r.impact_speed) << ',' << (r.hard ? 1 : 0) << ','
        << (r.aborted ? 1 : 0) << '\n';
  }
  return out.str();
}

namespace {

json stats_json(const MonteCarloStats& s) {
  return json{{"style", s.style},        {"runs", s.runs},
              {"aborted", s.aborted},    {"hard_landings", s.hard_landings},
              {"mean", s.mean},          {"stddev", s.stddev},
              {"max", s.max}};
}

}  // namespace

std::string monte_carlo_report_json(const MonteCarloResult& result) {
  json j{{"ballistic", stats_json(result.ballistic)},
         {"semi_ballistic", stats_json(result.semi)},
         {"paired_improvement",
          result.ballistic.mean > 0.0
              ? 1.0 - result.semi.mean / result.ballistic.mean
              : 0.0}};
  return j.dump(2) + "\n";
}

std::string monte_carlo_report_table(const MonteCarloResult& result) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %-16s %6s %8s %10s %10s %10s\n", "style",
                "runs", "aborted", "mean [m]", "stddev [m]", "max [m]");
  out << "landing dispersion\n" << buf;
  for (const MonteCarloStats* s : {&result.ballistic, &result.semi}) {
    std::snprintf(buf, sizeof buf, "  %-16s %6d %8d %10.4f %10.4f %10.4f\n",
                  s->style.c_str(), s->runs, s->aborted, s->mean, s->stddev,
                  s->max);
    out << buf;
  }
  return out.str();
}

SweepReport evaluate_sweep(const ThermalSweepResult& sweep,
                           const SweepSettings& settings,
                           const std::vector<ComponentLimit>& limits) {
  SweepReport report;
  report.annotate_power = settings.annotate_power;
  report.annotate_emissivity = settings.annotate_emissivity;
  for (std::size_t p = 0; p < sweep.power_grid.size(); ++p) {
    for (std::size_t e = 0; e < sweep.emissivity_grid.size(); ++e) {
      double teq = sweep.at_equilibrium(p, e);
      if (std::abs(sweep.power_grid[p] - settings.annotate_power) < 1e-9 &&
          std::abs(sweep.emissivity_grid[e] - settings.annotate_emissivity) <
              1e-9) {
        report.annotated_equilibrium_k = teq;
        report.annotated_delta_k = sweep.at_delta(p, e);
        report.annotated_found = true;
      }
      double teq_c = teq - 273.15;
      for (const ComponentLimit& limit : limits) {
        if (teq_c > limit.max_c || teq_c < limit.min_c) {
          report.flagged.push_back({sweep.power_grid[p],
                                    sweep.emissivity_grid[e], teq,
                                    limit.component, teq_c > limit.max_c});
          break;
        }
      }
    }
  }
  return report;
}

std::string sweep_report_json(const ThermalSweepResult& sweep,
                              const SweepReport& report) {
  json flagged = json::array();
  for (const SweepFlag& f : report.flagged) {
    flagged.push_back(json{{"power", f.power},
                           {"emissivity", f.emissivity},
                           {"equilibrium_k", f.equilibrium_k},
                           {"component", f.component},
                           {"too_hot", f.too_hot}});
  }
  json j{{"power_grid", sweep.power_grid},
         {"emissivity_grid", sweep.emissivity_grid},
         {"elapsed", sweep.elapsed},
         {"annotated",
          json{{"power", report.annotate_power},
               {"emissivity", report.annotate_emissivity},
               {"found", report.annotated_found},
               {"equilibrium_k", report.annotated_equilibrium_k},
               {"delta_k", report.annotated_delta_k}}},
         {"flagged_cells", flagged}};
  return j.dump(2) + "\n";
}

std::string sweep_report_table(const ThermalSweepResult& sweep,
                               const SweepReport& report) {
  std::ostringstream out;
  char buf[128];
  out << "radiative sweep (" << sweep.power_grid.size() << " x "
      << sweep.emissivity_grid.size() << " cells, " << sweep.elapsed
      << " s)\n";
  if (report.annotated_found) {
    std::snprintf(buf, sizeof buf,
                  "  at %.0f W, eps %.2f: equilibrium %.2f K, rise after "
                  "%.0f s %.2f K\n",
                  report.annotate_power, report.annotate_emissivity,
                  report.annotated_equilibrium_k, sweep.elapsed,
                  report.annotated_delta_k);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "  cells outside component limits: %zu\n",
                report.flagged.size());
  out << buf;
  for (const SweepFlag& f : report.flagged) {
    std::snprintf(buf, sizeof buf, "    %.0f W, eps %.2f -> %.1f K (%s, %s)\n",
                  f.power, f.emissivity, f.equilibrium_k,
                  f.component.c_str(), f.too_hot ? "too hot" : "too cold");
    out << buf;
  }
  return out.str();
}

BudgetReport evaluate_budget(const BudgetSettings& budget,
                             double flight_distance_m) {
  budget.propellant.validate();
  budget.power.validate();
  budget.data.validate();
  budget.station.validate();

  BudgetReport r;
  r.battery_wh = battery_capacity(budget.power);
  r.refill_kg = refill_mass(budget.propellant);
  r.refuel_minutes = refuel_time(r.refill_kg, budget.propellant.propellant_density,
                                 budget.station.refuel_flow);
  r.tank_volume_l = tank_volume(budget.propellant);
  r.tank_capacity_kg =
      r.tank_volume_l * 1e-3 * budget.propellant.propellant_density;
  r.refills_from_stock =
      flights_supported(budget.station.propellant_stock,
                        budget.propellant.per_flight_mass,
                        budget.propellant.margin);
  r.total_flights = r.refills_from_stock + 1;
  r.flight_distance_m = flight_distance_m;
  r.accumulated_km = r.total_flights * flight_distance_m / 1000.0;
  DataBudgetReport data = data_budget_check(budget.data);
  r.data_total_gb = data.total_gb;
  r.data_fits = data.fits;
  r.data_headroom_gb = data.headroom_gb;
  SampleSpacing spacing =
      ground_sample_spacing(budget.mapping_speed, budget.sample_rate);
  r.sample_spacing_m = spacing.spacing;
  r.spacing_exceeds_resolution = spacing.exceeds_resolution;
  r.standby_power_w = standby_power_limit(budget.station);
  return r;
}

void apply_cross_check(BudgetReport& report, const BudgetSettings& budget,
                       double flown_propellant_kg) {
  report.cross_checked = true;
  report.flown_propellant_kg = flown_propellant_kg;
  report.cross_check_ok =
      flown_propellant_kg <= budget.propellant.per_flight_mass;
}

std::string budget_report_json(const BudgetReport& report,
                               const BudgetSettings& budget) {
  json j{{"inputs",
          json{{"per_flight_mass", budget.propellant.per_flight_mass},
               {"margin", budget.propellant.margin},
               {"factor_of_safety", budget.propellant.factor_of_safety},
               {"propellant_density", budget.propellant.propellant_density},
               {"tank_pressure", budget.propellant.tank_pressure},
               {"pressurant_pressure", budget.propellant.pressurant_pressure},
               {"pressurant_mass", budget.propellant.pressurant_mass},
               {"sizing_factor", budget.propellant.sizing_factor},
               {"flight_power", budget.power.flight_power},
               {"sized_duration", budget.power.sized_duration},
               {"depth_of_discharge", budget.power.depth_of_discharge},
               {"conversion_efficiency", budget.power.conversion_efficiency},
               {"battery_mass", budget.station.battery_mass},
               {"specific_energy", budget.station.specific_energy},
               {"standby_hours", budget.station.standby_hours},
               {"refuel_flow", budget.station.refuel_flow},
               {"refueling_subsystem_mass",
                budget.station.refueling_subsystem_mass},
               {"propellant_stock", budget.station.propellant_stock},
               {"solar_array_area", budget.station.solar_array_area},
               {"mapping_speed", budget.mapping_speed},
               {"sample_rate", budget.sample_rate}}},
         {"battery_wh", report.battery_wh},
         {"refill_kg", report.refill_kg},
         {"refuel_minutes", report.refuel_minutes},
         {"tank_volume_l", report.tank_volume_l},
         {"tank_capacity_kg", report.tank_capacity_kg},
         {"refills_from_stock", report.refills_from_stock},
         {"total_flights", report.total_flights},
         {"flight_distance_m", report.flight_distance_m},
         {"accumulated_km", report.accumulated_km},
         {"data_total_gb", report.data_total_gb},
         {"data_fits", report.data_fits},
         {"data_headroom_gb", report.data_headroom_gb},
         {"sample_spacing_m", report.sample_spacing_m},
         {"spacing_exceeds_resolution", report.spacing_exceeds_resolution},
         {"standby_power_w", report.standby_power_w},
         {"cross_checked", report.cross_checked},
         {"flown_propellant_kg", report.flown_propellant_kg},
         {"cross_check_ok", report.cross_check_ok}};
  return j.dump(2) + "\n";
}

std::string budget_report_table(const BudgetReport& report,
                                const BudgetSettings& budget) {
  std::ostringstream out;
  out << "mission budgets\n";
  put(out, "battery capacity", num(report.battery_wh, "Wh"));
  put(out, "refill per service", num(report.refill_kg, "kg"));
  put(out, "refuel time", num(report.refuel_minutes, "min"));
  put(out, "propellant tank volume", num(report.tank_volume_l, "L"));
  put(out, "tank capacity", num(report.tank_capacity_kg, "kg"));
  put(out, "refills from stock", std::to_string(report.refills_from_stock));
  put(out, "total flights", std::to_string(report.total_flights));
  put(out, "accumulated distance", num(report.accumulated_km, "km"));
  put(out, "mapping data total", num(report.data_total_gb, "GB"));
  put(out, "data storage fits", report.data_fits ? "yes" : "NO");
  put(out, "data headroom", num(report.data_headroom_gb, "GB"));
  put(out, "ground sample spacing", num(report.sample_spacing_m, "m"));
  put(out, "spacing within 0.1 m",
      report.spacing_exceeds_resolution ? "NO" : "yes");
  put(out, "standby power limit", num(report.standby_power_w, "W"));
  put(out, "pressurant mass (ref)",
      num(budget.propellant.pressurant_mass, "kg"));
  put(out, "solar array area (ref)",
      num(budget.station.solar_array_area, "m^2"));
  if (report.cross_checked) {
    put(out, "flown propellant", num(report.flown_propellant_kg, "kg"));
    put(out, "within per-flight budget", report.cross_check_ok ? "yes" : "NO");
  } else {
    put(out, "flight cross-check", "skipped (no telemetry found)");
  }
  return out.str();
}

}  // namespace ldsim
