#include "ldsim/engine.hpp"

#include <cmath>

#include "ldsim/constants.hpp"

namespace ldsim {

void EngineSpec::validate() const {
  if (!(gamma > 1.0) || gamma > 2.0)
    throw ConfigError("engine.gamma must lie in (1, 2]");
  if (!(chamber_temperature > 0.0))
    throw ConfigError("engine.chamber_temperature must be > 0");
  if (!(throat_diameter > 0.0) || !(exit_diameter > throat_diameter))
    throw ConfigError("engine diameters must satisfy 0 < throat < exit");
  if (!(specific_gas_constant > 0.0))
    throw ConfigError("engine.specific_gas_constant must be > 0");
  if (!(flow_min > 0.0) || !(flow_max > flow_min))
    throw ConfigError("engine flow band must satisfy 0 < flow_min < flow_max");
  if (!(valve_time_constant > 0.0))
    throw ConfigError("engine.valve_time_constant must be > 0");
  if (!(min_impulse_bit >= 0.0))
    throw ConfigError("engine.min_impulse_bit must be >= 0");
  if (!(thrust_efficiency > 0.0) || thrust_efficiency > 1.05)
    throw ConfigError("engine.thrust_efficiency must lie in (0, 1.05]");
  if (coupling == ChamberCoupling::kFixed && !(fixed_chamber_pressure > 0.0))
    throw ConfigError("engine.fixed_chamber_pressure must be > 0");
}

double area_ratio(const EngineSpec& spec) {
  const double r = spec.exit_diameter / spec.throat_diameter;
  return r * r;
}

namespace {

// Isentropic area-Mach relation, A/A* as a function of exit Mach.
double area_ratio_of_mach(double mach, double gamma) {
  const double e = (gamma + 1.0) / (2.0 * (gamma - 1.0));
  const double a = std::pow((gamma + 1.0) / 2.0, -e);
  const double b = std::pow(1.0 + mach * mach * (gamma - 1.0) / 2.0, e);
  return a * b / mach;
}

double characteristic_velocity(double gamma, double r_spec, double tc) {
  const double e = (gamma + 1.0) / (2.0 * (gamma - 1.0));
  const double big_gamma = std::sqrt(gamma) * std::pow(2.0 / (gamma + 1.0), e);
  return std::sqrt(r_spec * tc) / big_gamma;
}

}  // namespace

double solve_exit_mach(double ratio, double gamma) {
  if (!(ratio > 1.0)) throw ConfigError("area ratio must be > 1 for a supersonic exit");
  if (!(gamma > 1.0) || gamma > 2.0) throw ConfigError("gamma must lie in (1, 2]");

  // The relation is monotonically increasing on the supersonic branch,
  // so bracket upward from Mach 1 and bisect.
  double lo = 1.0;
  double hi = 2.0;
  while (area_ratio_of_mach(hi, gamma) < ratio) {
    hi *= 2.0;
    if (hi > 1e6) throw ConfigError("area ratio too large to bracket exit Mach");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (area_ratio_of_mach(mid, gamma) < ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

NozzleSolution solve_nozzle(const EngineSpec& spec) {
  spec.validate();
  NozzleSolution sol;
  sol.throat_area = kPi / 4.0 * spec.throat_diameter * spec.throat_diameter;
  sol.exit_area = kPi / 4.0 * spec.exit_diameter * spec.exit_diameter;
  sol.area_ratio = area_ratio(spec);
  sol.exit_mach = solve_exit_mach(sol.area_ratio, spec.gamma);

  const double g = spec.gamma;
  const double me2 = sol.exit_mach * sol.exit_mach;
  const double stag = 1.0 + me2 * (g - 1.0) / 2.0;
  sol.pressure_ratio = std::pow(stag, -g / (g - 1.0));
  sol.exit_temperature = spec.chamber_temperature / stag;
  sol.exit_velocity =
      sol.exit_mach *
      std::sqrt(g * spec.specific_gas_constant * sol.exit_temperature);
  sol.cstar = characteristic_velocity(g, spec.specific_gas_constant,
                                      spec.chamber_temperature);
  return sol;
}

ChamberPressureResult chamber_pressure(const EngineSpec& spec, double mdot) {
  ChamberPressureResult out;
  double m = mdot;
  if (m < spec.flow_min) {
    m = spec.flow_min;
    out.clamped = true;
  } else if (m > spec.flow_max) {
    m = spec.flow_max;
    out.clamped = true;
  }
  if (spec.coupling == ChamberCoupling::kFixed) {
    out.value = spec.fixed_chamber_pressure;
    return out;
  }
  const NozzleSolution sol = solve_nozzle(spec);
  out.value = m * sol.cstar / sol.throat_area;
  return out;
}

EngineModel::EngineModel(const EngineSpec& spec)
    : spec_(spec), sol_(solve_nozzle(spec)) {
  f_min_ = thrust(spec_.flow_min, 0.0);
  f_max_ = thrust(spec_.flow_max, 0.0);
}

double EngineModel::thrust(double mdot, double ambient_pressure) const {
  if (!(mdot >= 0.0)) throw ConfigError("thrust: mdot must be >= 0");
  if (mdot == 0.0) return 0.0;  // valve closed, no chamber pressure
  double pc;
  if (spec_.coupling == ChamberCoupling::kFixed) {
    pc = spec_.fixed_chamber_pressure;
  } else {
    pc = mdot * sol_.cstar / sol_.throat_area;
  }
  const double pe = pc * sol_.pressure_ratio;
  const double f =
      spec_.thrust_efficiency *
      (mdot * sol_.exit_velocity + (pe - ambient_pressure) * sol_.exit_area);
  // Ambient back-pressure on a barely-open valve cannot pull the
  // vehicle; the plume just fails to develop.
  return std::max(f, 0.0);
}

double EngineModel::flow_for_thrust(double thrust_n) const {
  if (!(thrust_n >= 0.0)) throw ConfigError("flow_for_thrust: thrust must be >= 0");
  if (thrust_n == 0.0) return 0.0;
  if (spec_.coupling == ChamberCoupling::kFixed) {
    const double pe = spec_.fixed_chamber_pressure * sol_.pressure_ratio;
    const double offset = spec_.thrust_efficiency * pe * sol_.exit_area;
    const double slope = spec_.thrust_efficiency * sol_.exit_velocity;
    return std::max(0.0, (thrust_n - offset) / slope);
  }
  // Choked coupling makes vacuum thrust strictly linear in flow.
  const double slope =
      spec_.thrust_efficiency *
      (sol_.exit_velocity +
       sol_.pressure_ratio * sol_.cstar / sol_.throat_area * sol_.exit_area);
  return thrust_n / slope;
}

double EngineModel::vacuum_isp(double mdot) const {
  if (!(mdot > 0.0)) throw ConfigError("vacuum_isp: mdot must be > 0");
  return thrust(mdot, 0.0) / (mdot * kG0);
}

EngineSpec calibrate_engine(const EngineSpec& spec, double target_isp) {
  if (!(target_isp > 0.0)) throw ConfigError("calibration target Isp must be > 0");
  EngineSpec ideal = spec;
  ideal.thrust_efficiency = 1.0;
  const double isp_ideal = EngineModel(ideal).vacuum_isp(spec.flow_max);
  const double eff = target_isp / isp_ideal;
  if (!(eff > 0.0) || eff > 1.05) {
    throw ConfigError("calibration to " + std::to_string(target_isp) +
                      " s needs efficiency " + std::to_string(eff) +
                      " outside (0, 1.05]; ideal Isp is " +
                      std::to_string(isp_ideal) + " s");
  }
  EngineSpec out = spec;
  out.thrust_efficiency = eff;
  return out;
}

}  // namespace ldsim
