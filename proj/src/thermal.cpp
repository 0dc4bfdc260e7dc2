#include "ldsim/thermal.hpp"

#include <cmath>
#include <string>

#include "ldsim/fault.hpp"
#include "ldsim/integrate.hpp"
#include "ldsim/telemetry.hpp"

namespace ldsim {

void ThermalBody::validate() const {
  if (mass <= 0.0 || heat_capacity <= 0.0 || surface_area <= 0.0) {
    throw ConfigError("thermal body mass, heat capacity, area must be > 0");
  }
  if (emissivity <= 0.0 || emissivity > 1.0 || absorptivity <= 0.0 ||
      absorptivity > 1.0) {
    throw ConfigError("emissivity and absorptivity must lie in (0, 1]");
  }
  if (sink_temperature <= 0.0 || initial_temperature <= 0.0) {
    throw ConfigError("temperatures must be > 0 K");
  }
}

void HeatLoad::validate() const {
  if (generated < 0.0) throw ConfigError("heat load must be >= 0");
}

double radiated_power(double temperature, const ThermalBody& body) {
  if (temperature <= 0.0) throw ConfigError("temperature must be > 0 K");
  double t4 = temperature * temperature * temperature * temperature;
  double s4 = body.sink_temperature * body.sink_temperature *
              body.sink_temperature * body.sink_temperature;
  return body.emissivity * kStefanBoltzmann * body.surface_area * (t4 - s4);
}

double temperature_step(double temperature, const ThermalBody& body,
                        const HeatLoad& load, double dt) {
  if (dt <= 0.0) throw ConfigError("temperature_step: dt must be > 0");
  double inv_capacity = 1.0 / (body.mass * body.heat_capacity);
  auto deriv = [&](double, double t) {
    return (load.generated - radiated_power(t, body)) * inv_capacity;
  };
  return rk4_step_scalar(deriv, temperature, 0.0, dt);
}

double equilibrium_temperature(const HeatLoad& load, const ThermalBody& body) {
  double s = body.sink_temperature;
  double s4 = s * s * s * s;
  double t4 = load.generated /
                  (body.emissivity * kStefanBoltzmann * body.surface_area) +
              s4;
  return std::pow(t4, 0.25);
}

ThermalSweepResult thermal_sweep(const std::vector<double>& power_grid,
                                 const std::vector<double>& emissivity_grid,
                                 double elapsed, const ThermalBody& body,
                                 double dt) {
  if (power_grid.empty() || emissivity_grid.empty()) {
    throw ConfigError("thermal sweep grids must be non-empty");
  }
  if (elapsed <= 0.0 || dt <= 0.0) {
    throw ConfigError("thermal sweep elapsed time and dt must be > 0");
  }
  body.validate();

  ThermalSweepResult out;
  out.power_grid = power_grid;
  out.emissivity_grid = emissivity_grid;
  out.elapsed = elapsed;
  out.delta_t.reserve(power_grid.size() * emissivity_grid.size());
  out.equilibrium.reserve(out.delta_t.capacity());

  for (double power : power_grid) {
    HeatLoad load{power};
    load.validate();
    for (double eps : emissivity_grid) {
      ThermalBody cell = body;
      cell.emissivity = eps;
      cell.absorptivity = eps;
      cell.validate();
      double t = cell.initial_temperature;
      double remaining = elapsed;
      while (remaining > 1e-12) {
        double step = std::min(dt, remaining);
        t = temperature_step(t, cell, load, step);
        remaining -= step;
      }
      out.delta_t.push_back(t - cell.initial_temperature);
      out.equilibrium.push_back(equilibrium_temperature(load, cell));
    }
  }
  return out;
}

std::string sweep_matrix_csv(const ThermalSweepResult& sweep,
                             const std::vector<double>& values) {
  std::string csv = "Q_gen_W";
  for (double e : sweep.emissivity_grid) {
    csv += ",eps_" + format_g9(e);
  }
  csv += "\n";
  std::size_t cols = sweep.emissivity_grid.size();
  for (std::size_t p = 0; p < sweep.power_grid.size(); ++p) {
    csv += format_g9(sweep.power_grid[p]);
    for (std::size_t e = 0; e < cols; ++e) {
      csv += "," + format_g9(values[p * cols + e]);
    }
    csv += "\n";
  }
  return csv;
}

}  // namespace ldsim
