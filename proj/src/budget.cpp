#include "ldsim/budget.hpp"

#include <cmath>

#include "ldsim/fault.hpp"

namespace ldsim {

void PropellantBudget::validate() const {
  if (per_flight_mass <= 0.0 || propellant_density <= 0.0 ||
      tank_pressure <= 0.0 || pressurant_pressure <= 0.0 ||
      factor_of_safety <= 0.0 || sizing_factor <= 0.0) {
    throw ConfigError("propellant budget quantities must be > 0");
  }
  if (margin < 0.0 || ullage_fraction < 0.0 || ullage_fraction >= 1.0) {
    throw ConfigError("margin must be >= 0 and ullage_fraction in [0, 1)");
  }
}

void PowerBudget::validate() const {
  if (flight_power <= 0.0 || sized_duration <= 0.0 || cycles <= 0) {
    throw ConfigError("power budget quantities must be > 0");
  }
  if (depth_of_discharge <= 0.0 || depth_of_discharge > 1.0) {
    throw ConfigError("depth_of_discharge must lie in (0, 1]");
  }
  if (conversion_efficiency <= 0.0 || conversion_efficiency > 1.0) {
    throw ConfigError("conversion_efficiency must lie in (0, 1]");
  }
}

void DataBudget::validate() const {
  if (raw_per_flight < 0.0 || station_storage < 0.0 || flights < 0) {
    throw ConfigError("data budget quantities must be >= 0");
  }
  if (compression_ratio < 0.0 || compression_ratio > 1.0) {
    throw ConfigError("compression_ratio must lie in [0, 1]");
  }
}

void StationBudget::validate() const {
  if (battery_mass <= 0.0 || specific_energy <= 0.0 || standby_hours <= 0.0 ||
      refuel_flow <= 0.0 || refueling_subsystem_mass <= 0.0 ||
      propellant_stock <= 0.0 || flights_supported < 0) {
    throw ConfigError("station budget quantities must be > 0");
  }
}

double battery_capacity(const PowerBudget& budget) {
  budget.validate();
  return budget.flight_power * budget.sized_duration /
         (3600.0 * budget.depth_of_discharge * budget.conversion_efficiency);
}

double refuel_time(double refill_mass_kg, double density, double flow_ml_min) {
  if (flow_ml_min <= 0.0 || density <= 0.0) {
    throw ConfigError("refuel flow and density must be > 0");
  }
  if (refill_mass_kg < 0.0) throw ConfigError("refill mass must be >= 0");
  double volume_ml = refill_mass_kg / density * 1.0e6;
  return volume_ml / flow_ml_min;
}

double refill_mass(const PropellantBudget& budget) {
  budget.validate();
  return budget.per_flight_mass * (1.0 + budget.margin);
}

double tank_volume(const PropellantBudget& budget) {
  budget.validate();
  double stored_mass = refill_mass(budget) * budget.sizing_factor;
  double liquid_volume_l = stored_mass / budget.propellant_density * 1.0e3;
  return liquid_volume_l / (1.0 - budget.ullage_fraction);
}

double tank_sizing_factor_for(double target_volume_l,
                              const PropellantBudget& budget) {
  budget.validate();
  if (target_volume_l <= 0.0) throw ConfigError("target volume must be > 0");
  double liquid_volume_l = target_volume_l * (1.0 - budget.ullage_fraction);
  double stored_mass = liquid_volume_l * budget.propellant_density / 1.0e3;
  return stored_mass / refill_mass(budget);
}

int flights_supported(double station_propellant_mass, double per_flight,
                      double margin) {
  if (per_flight <= 0.0) throw ConfigError("per-flight mass must be > 0");
  if (station_propellant_mass < 0.0) {
    throw ConfigError("station propellant stock must be >= 0");
  }
  double refill = per_flight * (1.0 + margin);
  // Nudge past representation error so an exact integer stock counts.
  return static_cast<int>(
      std::floor(station_propellant_mass / refill + 1e-9));
}

DataBudgetReport data_budget_check(const DataBudget& budget) {
  budget.validate();
  DataBudgetReport report;
  report.total_gb = budget.raw_per_flight * budget.flights;
  report.fits = report.total_gb <= budget.station_storage;
  report.headroom_gb = budget.station_storage - report.total_gb;
  return report;
}

SampleSpacing ground_sample_spacing(double speed, double sample_rate) {
  if (sample_rate <= 0.0) throw ConfigError("sample rate must be > 0");
  if (speed < 0.0) throw ConfigError("speed must be >= 0");
  SampleSpacing out;
  out.spacing = speed / sample_rate;
  out.exceeds_resolution = out.spacing > 0.1 + 1e-12;
  return out;
}

double standby_power_limit(const StationBudget& station) {
  station.validate();
  return station.battery_mass * station.specific_energy / station.standby_hours;
}

}  // namespace ldsim
