#pragma once

#include <array>

#include "ldsim/engine.hpp"
#include "ldsim/estimator.hpp"
#include "ldsim/layout.hpp"
#include "ldsim/pid.hpp"
#include "ldsim/rigid_body.hpp"
#include "ldsim/trajectory.hpp"
#include "ldsim/valve.hpp"

namespace ldsim {

/// Flight envelope enforced by the controller and used to vet generated
/// references before flight.
struct ControlLimits {
  double max_tilt = 24.0 * kPi / 180.0;
  double max_horizontal_speed = 17.5;
  double landing_speed_limit = 2.0;

  void validate() const;
};

struct ControllerGains {
  PidGains horizontal{0.55, 0.02, 1.30, 4.0, 0.0, 0.15};
  PidGains altitude{1.8, 0.25, 2.6, 1.5, 0.0, 0.05};
  PidGains attitude{14.0, 0.3, 7.5, 0.4, 0.0, 0.02};
  PidGains yaw{6.0, 0.1, 4.0, 0.4, 0.0, 0.02};
  double outer_period = 0.1;   // position loop
  double inner_period = 0.01;  // altitude and attitude loops
  double max_vertical_accel = 3.2;        // demand clamp, up
  double max_descent_accel = 1.35;        // demand clamp, down (below g)
  double idle_collective_fraction = 0.08; // weight fraction treated as idle
  double attitude_deadband = 0.030;       // rad, coast-phase tolerance
  double rate_deadband = 0.035;           // rad/s
  double terminal_descent_speed = 0.5;    // crawl once the reference ends
  double hold_position_gate = 0.03;       // centering needed to leave the hold
  double tilt_margin_fraction = 0.95;     // setpoint cap below the hard limit
  double coast_torque_scale = 0.35;       // attitude authority while dark
};

struct ControlCommand {
  std::array<PulseCommand, 4> pulses{};
  std::array<double, 4> thrust_setpoint{};
  double collective = 0.0;
  double pitch_setpoint = 0.0;
  double roll_setpoint = 0.0;
  bool saturated = false;
};

struct AllocationResult {
  std::array<double, 4> thrusts{};
  bool saturated = false;
};

/// Maps a body-frame demand (collective z force plus three torques) to
/// per-thruster positive thrusts, clipping to the feasible range.
AllocationResult allocate_thrust(const ThrusterLayout& layout,
                                 double collective, const Vec3& torque,
                                 double max_thrust);

/// Tilt setpoints realizing a horizontal acceleration demand while the
/// vertical channel holds `vertical_accel` of upward thrust acceleration.
void tilt_setpoints(const Vec3& accel_demand, double gravity, double max_tilt,
                    double& pitch, double& roll);

/// Cascaded reference-tracking controller: a slow position loop shapes
/// tilt setpoints, fast altitude and attitude loops close around them,
/// and the allocator turns the resulting wrench into valve commands.
class FlightController {
 public:
  FlightController(const ControllerGains& gains, const ControlLimits& limits,
                   const ThrusterLayout& layout, const EngineModel& engine,
                   const InertiaModel& inertia, const WorldModel& world);

  void reset();

  /// Position loop, run at the outer period.
  void outer_update(const NavState& nav, const ReferencePoint& ref);

  /// Altitude plus attitude loops, run at the inner period. Returns the
  /// per-thruster commands for the next period.
  ControlCommand inner_update(const NavState& nav, const ReferencePoint& ref,
                              double wet_mass);

  const ControllerGains& gains() const { return gains_; }

 private:
  ControllerGains gains_;
  ControlLimits limits_;
  ThrusterLayout layout_;
  const EngineModel* engine_;
  InertiaModel inertia_;
  WorldModel world_;

  PidController pid_x_, pid_y_, pid_z_;
  PidController pid_roll_, pid_pitch_, pid_yaw_;
  double pitch_setpoint_ = 0.0;
  double roll_setpoint_ = 0.0;
  Vec3 outer_accel_ff_ = Vec3::Zero();
  bool coasting_ = false;
};

}  // namespace ldsim
