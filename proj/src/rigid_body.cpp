#include "ldsim/rigid_body.hpp"

#include <array>
#include <cmath>

#include "ldsim/integrate.hpp"

namespace ldsim {

namespace {

// State packing for the integrator:
// [0..2] position, [3..5] velocity, [6..9] quaternion wxyz,
// [10..12] body angular rate, [13] wet mass.
constexpr std::size_t kStateSize = 14;

std::array<double, kStateSize> pack(const RigidBodyState& s) {
  return {s.position.x(),     s.position.y(),     s.position.z(),
          s.velocity.x(),     s.velocity.y(),     s.velocity.z(),
          s.orientation.w(),  s.orientation.x(),  s.orientation.y(),
          s.orientation.z(),  s.angular_rate.x(), s.angular_rate.y(),
          s.angular_rate.z(), s.wet_mass};
}

RigidBodyState unpack(const std::array<double, kStateSize>& x) {
  RigidBodyState s;
  s.position = Vec3(x[0], x[1], x[2]);
  s.velocity = Vec3(x[3], x[4], x[5]);
  s.orientation = Quat(x[6], x[7], x[8], x[9]);
  s.angular_rate = Vec3(x[10], x[11], x[12]);
  s.wet_mass = x[13];
  return s;
}

}  // namespace

RigidBodyState step_rigid_body(const RigidBodyState& state,
                               const BodyWrench& wrench_body,
                               double total_flow, const InertiaModel& inertia,
                               const WorldModel& world, double t, double dt) {
  DerivFn<kStateSize> deriv = [&](double, const std::array<double, kStateSize>& x,
                                  std::array<double, kStateSize>& dx) {
    const Quat q(x[6], x[7], x[8], x[9]);
    const Vec3 omega(x[10], x[11], x[12]);
    const double mass = x[13];

    // Translation: rotate the body-frame thrust into the world frame.
    const Vec3 accel =
        q * wrench_body.force / mass + Vec3(0, 0, -world.gravity);
    dx[0] = x[3];
    dx[1] = x[4];
    dx[2] = x[5];
    dx[3] = accel.x();
    dx[4] = accel.y();
    dx[5] = accel.z();

    // Quaternion kinematics qdot = 1/2 q (x) (0, omega).
    const Quat omega_q(0.0, omega.x(), omega.y(), omega.z());
    const Quat qdot = q * omega_q;
    dx[6] = 0.5 * qdot.w();
    dx[7] = 0.5 * qdot.x();
    dx[8] = 0.5 * qdot.y();
    dx[9] = 0.5 * qdot.z();

    // Euler's equation with the diagonal, mass-scaled inertia.
    const Eigen::Matrix3d inertia_m = inertia.inertia(mass);
    const Vec3 angular_accel = inertia_m.inverse() *
        (wrench_body.torque - omega.cross(inertia_m * omega));
    dx[10] = angular_accel.x();
    dx[11] = angular_accel.y();
    dx[12] = angular_accel.z();

    dx[13] = -total_flow;
  };

  RigidBodyState out = unpack(rk4_step<kStateSize>(deriv, pack(state), t, dt));
  out.orientation.normalize();
  if (!(out.wet_mass > 0.0)) throw SimFault("wet mass depleted to zero", t);
  return out;
}

double specific_energy(const RigidBodyState& state, const WorldModel& world) {
  return 0.5 * state.velocity.squaredNorm() +
         world.gravity * state.position.z();
}

Vec3 euler_rpy(const Quat& q) {
  const Eigen::Matrix3d r = q.toRotationMatrix();
  // z-y-x (yaw-pitch-roll) extraction; pitch about body y.
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return Vec3(roll, pitch, yaw);
}

TouchdownResult touchdown_check(const RigidBodyState& state,
                                const WorldModel& world, const Vec3& pad,
                                double landing_speed_limit) {
  TouchdownResult res;
  if (state.position.z() > world.ground_height) return res;
  res.touched = true;
  res.impact_speed = state.velocity.norm();
  res.vertical_speed = -state.velocity.z();
  res.misalignment = (state.position.head<2>() - pad.head<2>()).norm();
  res.hard = res.impact_speed > landing_speed_limit;
  return res;
}

}  // namespace ldsim
