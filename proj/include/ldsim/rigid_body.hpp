#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "ldsim/layout.hpp"
#include "ldsim/world.hpp"

namespace ldsim {

using Quat = Eigen::Quaterniond;

/// Truth state of the vehicle. Orientation maps body to world vectors;
/// angular rate is expressed in the body frame.
struct RigidBodyState {
  Vec3 position = Vec3::Zero();   ///< [m] world, z up
  Vec3 velocity = Vec3::Zero();   ///< [m/s] world
  Quat orientation = Quat::Identity();
  Vec3 angular_rate = Vec3::Zero();///< [rad/s] body
  double wet_mass = 15.0;         ///< [kg]
};

/// Homogeneous rectangular hull. The inertia tensor is diagonal in the
/// body frame and scales linearly with the current wet mass, which
/// keeps propellant depletion consistent without tracking tank levels
/// per axis.
struct InertiaModel {
  Vec3 dimensions{0.45, 0.48, 0.378};  ///< [m] x, y, z hull lengths

  Eigen::Matrix3d inertia(double mass) const {
    const double lx2 = dimensions.x() * dimensions.x();
    const double ly2 = dimensions.y() * dimensions.y();
    const double lz2 = dimensions.z() * dimensions.z();
    Eigen::Matrix3d i = Eigen::Matrix3d::Zero();
    i(0, 0) = mass / 12.0 * (ly2 + lz2);
    i(1, 1) = mass / 12.0 * (lx2 + lz2);
    i(2, 2) = mass / 12.0 * (lx2 + ly2);
    return i;
  }
};

/// Advance the rigid body one fixed step with RK4. The body wrench and
/// total propellant flow are held constant across the step (they come
/// from the valve model, which integrates separately). The quaternion
/// is renormalized after the step.
RigidBodyState step_rigid_body(const RigidBodyState& state,
                               const BodyWrench& wrench_body,
                               double total_flow, const InertiaModel& inertia,
                               const WorldModel& world, double t, double dt);

/// Specific mechanical energy of the translation state, used by the
/// coast-conservation checks [J/kg].
double specific_energy(const RigidBodyState& state, const WorldModel& world);

/// Roll, pitch, yaw of the orientation in aerospace z-y-x order [rad].
Vec3 euler_rpy(const Quat& q);

struct TouchdownResult {
  bool touched = false;
  double impact_speed = 0.0;   ///< [m/s] total velocity at contact
  double vertical_speed = 0.0; ///< [m/s] descent rate at contact
  double misalignment = 0.0;   ///< [m] horizontal distance to the pad
  bool hard = false;           ///< impact above the configured limit
};

/// Ground contact test against the flat landing plane. `pad` is the
/// intended touchdown point; the limit classifies the landing.
TouchdownResult touchdown_check(const RigidBodyState& state,
                                const WorldModel& world, const Vec3& pad,
                                double landing_speed_limit);

}  // namespace ldsim
