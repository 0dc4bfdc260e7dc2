#pragma once

#include "ldsim/engine.hpp"

namespace ldsim {

/// Per-thruster actuator state carried across integrator steps.
struct ThrusterState {
  double commanded_flow = 0.0;      ///< [kg/s] step-mean command
  double actual_flow = 0.0;         ///< [kg/s] after valve lag
  double propellant_consumed = 0.0; ///< [kg] cumulative
};

/// Advance the first-order valve response by one step using the exact
/// discretization of df/dt = (cmd - f)/tau, and account the propellant
/// drawn during the step by the exact integral of the response.
/// Returns the mean flow over the step, which is what the mass ODE and
/// the thrust averaging want.
inline double valve_update(ThrusterState& st, double commanded, double dt,
                           double tau) {
  const double f0 = st.actual_flow;
  const double decay = std::exp(-dt / tau);
  st.commanded_flow = commanded;
  st.actual_flow = commanded + (f0 - commanded) * decay;
  // A closed valve drains exponentially forever in the model; once the
  // residual is far below any meterable flow, treat it as shut.
  if (commanded <= 0.0 && st.actual_flow < 1e-12) st.actual_flow = 0.0;
  const double integral = commanded * dt + (f0 - commanded) * tau * (1.0 - decay);
  st.propellant_consumed += integral;
  return integral / dt;
}

/// One inner-loop actuation decision for a thruster.
struct PulseCommand {
  double flow = 0.0;        ///< [kg/s] flow level while the valve is open
  double on_fraction = 0.0; ///< fraction of the control period open
  double impulse = 0.0;     ///< [N s] delivered over the period
  bool suppressed = false;  ///< demand was below the minimum impulse bit
};

/// Map a desired mean thrust over one control period onto a valve
/// schedule. Demands at or above the minimum steady thrust throttle
/// continuously; below it the thruster pulses at minimum flow with a
/// duty cycle matching the demand, and pulses whose impulse would fall
/// under the minimum impulse bit are suppressed entirely.
inline PulseCommand pulse_modulate(double desired_thrust, double period,
                                   const EngineModel& engine) {
  PulseCommand out;
  if (!(period > 0.0)) throw ConfigError("pulse_modulate: period must be > 0");
  if (desired_thrust <= 0.0) return out;

  const double f_min = engine.min_thrust();
  if (desired_thrust >= f_min) {
    const double clipped = std::min(desired_thrust, engine.max_thrust());
    out.flow = engine.flow_for_thrust(clipped);
    out.on_fraction = 1.0;
    out.impulse = clipped * period;
    return out;
  }

  const double duty = desired_thrust / f_min;
  const double impulse = f_min * duty * period;
  if (impulse < engine.spec().min_impulse_bit) {
    out.suppressed = true;
    return out;
  }
  out.flow = engine.spec().flow_min;
  out.on_fraction = duty;
  out.impulse = impulse;
  return out;
}

}  // namespace ldsim
