#pragma once

#include <cstdint>

namespace ldsim {

/// Propellant sizing inputs. The tank sizing factor is the composite
/// growth applied on top of the margined per-flight load; its default
/// recovers the flown tank volume (see tank_volume).
struct PropellantBudget {
  double per_flight_mass = 1.86;        // [kg]
  double margin = 0.20;
  double factor_of_safety = 2.0;        // structural, echoed in reports
  double propellant_density = 1004.0;   // [kg/m^3]
  double tank_pressure = 2.4e6;         // [Pa]
  double pressurant_pressure = 14.0e6;  // [Pa]
  double sizing_factor = 1.5069;        // volume growth over margined load
  double ullage_fraction = 0.0;
  double pressurant_mass = 0.154;       // [kg], echoed in reports only

  void validate() const;
};

struct PowerBudget {
  double flight_power = 324.0;         // [W]
  double sized_duration = 180.0;       // [s]
  double depth_of_discharge = 0.9;
  int cycles = 10;
  double conversion_efficiency = 0.85;

  void validate() const;
};

struct DataBudget {
  double raw_per_flight = 20.5;   // [GB], already compressed
  double compression_ratio = 0.25;
  int flights = 11;
  double station_storage = 440.0; // [GB]

  void validate() const;
};

struct StationBudget {
  double battery_mass = 20.5;            // [kg]
  double specific_energy = 246.7;        // [Wh/kg]
  double standby_hours = 50.0;
  double refuel_flow = 200.0;            // [mL/min]
  double refueling_subsystem_mass = 32.0;// [kg]
  double propellant_stock = 22.32;       // [kg] refill stock carried
  int flights_supported = 10;            // design count, additional flights
  double solar_array_area = 1.29;        // [m^2], echoed in reports only

  void validate() const;
};

/// Battery energy needed to cover one sized flight. [Wh]
double battery_capacity(const PowerBudget& budget);

/// Time to transfer `refill_mass` of propellant at the station's pump
/// flow. [minutes]
double refuel_time(double refill_mass, double density, double flow_ml_min);

/// Margined refill quantity transferred per service visit. [kg]
double refill_mass(const PropellantBudget& budget);

/// Propellant tank volume from the margined load and sizing factor. [L]
double tank_volume(const PropellantBudget& budget);

/// Sizing factor that would be needed to reach `target_volume_l`.
double tank_sizing_factor_for(double target_volume_l,
                              const PropellantBudget& budget);

/// Whole refills the station stock covers.
int flights_supported(double station_propellant_mass, double per_flight,
                      double margin);

struct DataBudgetReport {
  double total_gb = 0.0;
  bool fits = false;
  double headroom_gb = 0.0;
};

DataBudgetReport data_budget_check(const DataBudget& budget);

/// Ground distance between consecutive samples at a given speed; the
/// flag trips when it exceeds the 0.1 m/px mapping requirement.
struct SampleSpacing {
  double spacing = 0.0;  // [m]
  bool exceeds_resolution = false;
};

SampleSpacing ground_sample_spacing(double speed, double sample_rate);

/// Highest average standby draw that survives the required dark hours. [W]
double standby_power_limit(const StationBudget& station);

}  // namespace ldsim
