#include "ldsim/control.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace ldsim {

void ControlLimits::validate() const {
  if (max_tilt <= 0.0 || max_tilt >= 0.5 * kPi) {
    throw ConfigError("max_tilt must lie in (0, 90) degrees");
  }
  if (max_horizontal_speed <= 0.0) {
    throw ConfigError("max_horizontal_speed must be > 0");
  }
  if (landing_speed_limit <= 0.0) {
    throw ConfigError("landing_speed_limit must be > 0");
  }
}

AllocationResult allocate_thrust(const ThrusterLayout& layout,
                                 double collective, const Vec3& torque,
                                 double max_thrust) {
  AllocationResult out;
  Eigen::Matrix4d m = allocation_matrix(layout);
  Eigen::Vector4d demand(collective, torque.x(), torque.y(), torque.z());
  Eigen::Vector4d solved = m.partialPivLu().solve(demand);
  for (int i = 0; i < 4; ++i) {
    double clipped = std::clamp(solved[i], 0.0, max_thrust);
    if (std::abs(clipped - solved[i]) > 1e-9 * std::max(1.0, max_thrust)) {
      out.saturated = true;
    }
    out.thrusts[static_cast<std::size_t>(i)] = clipped;
  }
  return out;
}

void tilt_setpoints(const Vec3& accel_demand, double gravity, double max_tilt,
                    double& pitch, double& roll) {
  // During free-fall tracking the vertical thrust demand collapses;
  // floor the denominator so the geometry degrades to a level attitude
  // instead of swinging the setpoints around.
  double vertical = std::max(0.25 * gravity, gravity + accel_demand.z());
  pitch = std::clamp(std::atan2(accel_demand.x(), vertical), -max_tilt,
                     max_tilt);
  roll = std::clamp(-std::atan2(accel_demand.y(), vertical), -max_tilt,
                    max_tilt);
}

FlightController::FlightController(const ControllerGains& gains,
                                   const ControlLimits& limits,
                                   const ThrusterLayout& layout,
                                   const EngineModel& engine,
                                   const InertiaModel& inertia,
                                   const WorldModel& world)
    : gains_(gains),
      limits_(limits),
      layout_(layout),
      engine_(&engine),
      inertia_(inertia),
      world_(world) {
  limits_.validate();
  pid_x_ = PidController(gains_.horizontal);
  pid_y_ = PidController(gains_.horizontal);
  pid_z_ = PidController(gains_.altitude);
  pid_roll_ = PidController(gains_.attitude);
  pid_pitch_ = PidController(gains_.attitude);
  pid_yaw_ = PidController(gains_.yaw);
}

void FlightController::reset() {
  pid_x_.reset();
  pid_y_.reset();
  pid_z_.reset();
  pid_roll_.reset();
  pid_pitch_.reset();
  pid_yaw_.reset();
  pitch_setpoint_ = 0.0;
  roll_setpoint_ = 0.0;
  outer_accel_ff_ = Vec3::Zero();
}

void FlightController::outer_update(const NavState& nav,
                                    const ReferencePoint& ref) {
  double dt = gains_.outer_period;
  // A free-falling reference cannot be tracked with thrust worth its
  // propellant; hold a level attitude and let the powered legs absorb
  // the drift. The horizontal integrators freeze while dark.
  bool freefall =
      world_.gravity + ref.acceleration.z() < 0.15 * world_.gravity;
  coasting_ = freefall;
  if (freefall) {
    pitch_setpoint_ = 0.0;
    roll_setpoint_ = 0.0;
    outer_accel_ff_ = Vec3(0.0, 0.0, ref.acceleration.z());
    return;
  }
  double ax = pid_x_.update_with_rate(ref.position.x() - nav.position.x(),
                                      ref.velocity.x() - nav.velocity.x(), dt) +
              ref.acceleration.x();
  double ay = pid_y_.update_with_rate(ref.position.y() - nav.position.y(),
                                      ref.velocity.y() - nav.velocity.y(), dt) +
              ref.acceleration.y();
  outer_accel_ff_ = Vec3(ax, ay, ref.acceleration.z());
  tilt_setpoints(outer_accel_ff_, world_.gravity,
                 gains_.tilt_margin_fraction * limits_.max_tilt,
                 pitch_setpoint_, roll_setpoint_);
}

ControlCommand FlightController::inner_update(const NavState& nav,
                                              const ReferencePoint& ref,
                                              double wet_mass) {
  double dt = gains_.inner_period;
  ControlCommand cmd;
  cmd.pitch_setpoint = pitch_setpoint_;
  cmd.roll_setpoint = roll_setpoint_;

  // Vertical channel in world frame.
  double az_demand =
      pid_z_.update_with_rate(ref.position.z() - nav.position.z(),
                              ref.velocity.z() - nav.velocity.z(), dt) +
      ref.acceleration.z();
  double az = std::clamp(az_demand, -gains_.max_descent_accel,
                         gains_.max_vertical_accel);
  double upward_force = wet_mass * (world_.gravity + az);
  if (upward_force < 0.0) upward_force = 0.0;
  // Idle is judged on the raw demand, not the clamped one. Upward-pointing
  // thrusters cannot push the vehicle down, so when the loop asks for more
  // downward acceleration than free fall provides the closest achievable
  // response is to shut the valves and let gravity do the work.
  bool idle = world_.gravity + az_demand <
              gains_.idle_collective_fraction * world_.gravity;

  Vec3 body_z_world = nav.orientation * Vec3::UnitZ();
  double cos_tilt = std::max(0.35, body_z_world.z());
  cmd.collective = upward_force / cos_tilt;

  // Attitude channel. Setpoint quaternion from the outer loop's tilt
  // targets, yaw held at zero.
  Quat q_des(Eigen::AngleAxisd(pitch_setpoint_, Vec3::UnitY()) *
             Eigen::AngleAxisd(roll_setpoint_, Vec3::UnitX()));
  Quat q_err = nav.orientation.conjugate() * q_des;
  if (q_err.w() < 0.0) q_err.coeffs() *= -1.0;
  Vec3 angle_err = 2.0 * Vec3(q_err.x(), q_err.y(), q_err.z());

  double alpha_x =
      pid_roll_.update_with_rate(angle_err.x(), -nav.angular_rate.x(), dt);
  double alpha_y =
      pid_pitch_.update_with_rate(angle_err.y(), -nav.angular_rate.y(), dt);
  double alpha_z =
      pid_yaw_.update_with_rate(angle_err.z(), -nav.angular_rate.z(), dt);
  Eigen::Matrix3d moi = inertia_.inertia(wet_mass);
  Vec3 torque(moi(0, 0) * alpha_x, moi(1, 1) * alpha_y, moi(2, 2) * alpha_z);
  // Every newton of torque costs net upward force because the thrusters
  // only push one way. Reorient gently while coasting; the powered legs
  // get the full bandwidth back.
  if (coasting_) torque *= gains_.coast_torque_scale;

  if (idle) {
    cmd.collective = 0.0;
    bool settled = angle_err.cwiseAbs().maxCoeff() < gains_.attitude_deadband &&
                   nav.angular_rate.cwiseAbs().maxCoeff() < gains_.rate_deadband;
    if (settled) {
      // Coasting with attitude inside the deadband: stay dark instead of
      // chattering propellant away on micro corrections.
      return cmd;
    }
  }

  AllocationResult alloc = allocate_thrust(layout_, cmd.collective, torque,
                                           engine_->max_thrust());
  cmd.saturated = alloc.saturated;
  cmd.thrust_setpoint = alloc.thrusts;
  for (std::size_t i = 0; i < 4; ++i) {
    cmd.pulses[i] = pulse_modulate(alloc.thrusts[i], dt, *engine_);
  }
  return cmd;
}

}  // namespace ldsim
