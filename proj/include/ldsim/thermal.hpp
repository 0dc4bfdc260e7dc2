#pragma once

#include <string>
#include <vector>

#include "ldsim/constants.hpp"

namespace ldsim {

/// Lumped gray-body model of the drone radiating to the cold sky.
struct ThermalBody {
  double mass = 15.0;               // [kg]
  double heat_capacity = 900.0;     // [J/(kg K)]
  double surface_area = 1.021;      // [m^2]
  double emissivity = 0.8;
  double absorptivity = 0.8;        // gray body: equal to emissivity
  double sink_temperature = 4.0;    // [K]
  double initial_temperature = 278.15;  // [K]

  void validate() const;
};

struct HeatLoad {
  double generated = 0.0;  // [W] incident plus internally generated

  void validate() const;
};

/// Net outgoing radiated power at temperature T; negative below the
/// sink temperature.
double radiated_power(double temperature, const ThermalBody& body);

/// One RK4 step of the lumped heat balance. Returns the new temperature.
double temperature_step(double temperature, const ThermalBody& body,
                        const HeatLoad& load, double dt);

/// Closed-form steady temperature where radiation balances the load.
double equilibrium_temperature(const HeatLoad& load, const ThermalBody& body);

struct ThermalSweepResult {
  std::vector<double> power_grid;       // [W]
  std::vector<double> emissivity_grid;
  double elapsed = 0.0;                 // [s]
  // Row-major [power][emissivity].
  std::vector<double> delta_t;          // T(elapsed) - T0
  std::vector<double> equilibrium;      // [K]

  double at_delta(std::size_t p, std::size_t e) const {
    return delta_t[p * emissivity_grid.size() + e];
  }
  double at_equilibrium(std::size_t p, std::size_t e) const {
    return equilibrium[p * emissivity_grid.size() + e];
  }
};

/// Integrates each (power, emissivity) cell to `elapsed` seconds and
/// evaluates the matching equilibrium. `dt` is the integration step.
ThermalSweepResult thermal_sweep(const std::vector<double>& power_grid,
                                 const std::vector<double>& emissivity_grid,
                                 double elapsed, const ThermalBody& body,
                                 double dt = 0.1);

/// CSV matrix with grid values as row and column headers.
std::string sweep_matrix_csv(const ThermalSweepResult& sweep,
                             const std::vector<double>& values);

}  // namespace ldsim
