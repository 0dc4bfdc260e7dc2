#pragma once

#include <string>

#include "ldsim/fault.hpp"

namespace ldsim {

/// How chamber pressure responds to commanded flow.
enum class ChamberCoupling {
  kChoked,  ///< Pc = mdot * c* / A*, pressure scales with throttle
  kFixed,   ///< regulator holds Pc constant while the valve is open
};

/// Cold-gas-free monopropellant thruster description. Geometry and gas
/// properties define the ideal nozzle; thrust_efficiency scales ideal
/// thrust onto the measured performance band.
struct EngineSpec {
  double gamma = 1.25;                  ///< ratio of specific heats
  double chamber_temperature = 2800.0;  ///< [K]
  double throat_diameter = 4.25e-3;     ///< [m]
  double exit_diameter = 34.0e-3;       ///< [m]
  double specific_gas_constant = 260.0; ///< [J/(kg K)] exhaust mixture
  double flow_min = 4.1e-3;             ///< [kg/s] lowest steady throttle
  double flow_max = 14.0e-3;            ///< [kg/s]
  double valve_time_constant = 0.090;   ///< [s] first-order valve lag
  double min_impulse_bit = 0.015;       ///< [N s] smallest usable pulse
  double thrust_efficiency = 1.0;       ///< ideal-to-real thrust scale
  ChamberCoupling coupling = ChamberCoupling::kChoked;
  double fixed_chamber_pressure = 1.34e6; ///< [Pa], kFixed mode only

  void validate() const;
};

/// Frozen isentropic expansion through the nozzle. Everything here
/// depends only on geometry and gas properties, not on throttle.
struct NozzleSolution {
  double area_ratio = 0.0;      ///< Ae / A*
  double exit_mach = 0.0;
  double pressure_ratio = 0.0;  ///< Pe / Pc
  double exit_temperature = 0.0;///< [K]
  double exit_velocity = 0.0;   ///< [m/s]
  double cstar = 0.0;           ///< [m/s] characteristic velocity
  double throat_area = 0.0;     ///< [m^2]
  double exit_area = 0.0;       ///< [m^2]
};

/// Expansion ratio from the configured throat and exit diameters.
double area_ratio(const EngineSpec& spec);

/// Supersonic exit Mach number for a given expansion ratio, from the
/// isentropic area-Mach relation, solved by bisection. Residual is
/// driven below 1e-9 of the requested ratio.
double solve_exit_mach(double area_ratio, double gamma);

struct ChamberPressureResult {
  double value = 0.0;  ///< [Pa]
  bool clamped = false;///< flow was outside the steady throttle band
};

/// Steady chamber pressure at a commanded flow. Flow outside the
/// throttle band is clamped to it and flagged.
ChamberPressureResult chamber_pressure(const EngineSpec& spec, double mdot);

/// Solve the nozzle expansion once for a spec.
NozzleSolution solve_nozzle(const EngineSpec& spec);

/// Engine spec plus its cached nozzle solution and the derived thrust
/// band. Use this in inner loops; the expansion is solved exactly once.
class EngineModel {
public:
  explicit EngineModel(const EngineSpec& spec);

  const EngineSpec& spec() const { return spec_; }
  const NozzleSolution& nozzle() const { return sol_; }

  /// Momentum plus pressure thrust at a given actual flow and ambient
  /// pressure. Zero flow means a closed valve and exactly zero thrust.
  double thrust(double mdot, double ambient_pressure) const;

  /// Inverse of thrust() at zero ambient pressure.
  double flow_for_thrust(double thrust_n) const;

  /// Specific impulse referenced to vacuum thrust at the given flow.
  double vacuum_isp(double mdot) const;

  /// Thrust at the lowest / highest steady throttle, vacuum.
  double min_thrust() const { return f_min_; }
  double max_thrust() const { return f_max_; }

private:
  EngineSpec spec_;
  NozzleSolution sol_;
  double f_min_ = 0.0;
  double f_max_ = 0.0;
};

/// Return a copy of `spec` with thrust_efficiency chosen so that the
/// vacuum specific impulse at full throttle equals `target_isp` seconds.
/// Rejects targets that would need an efficiency outside (0, 1.05],
/// reporting the ideal-efficiency value in the error.
EngineSpec calibrate_engine(const EngineSpec& spec, double target_isp);

}  // namespace ldsim
