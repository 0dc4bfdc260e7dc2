#pragma once

#include <array>

#include <Eigen/Dense>

#include "ldsim/fault.hpp"

namespace ldsim {

using Vec3 = Eigen::Vector3d;

/// Placement of the four lift thrusters on the hull, body frame, z up
/// through the hull top. Mounts sit on a circle in the top plane;
/// thrust on the vehicle points upward with the cant angle off vertical.
///
/// The horizontal component of each thrust vector is the outward radial
/// direction rotated toward tangential by yaw_twist, with the tangential
/// sense alternating around the ring. The alternation cancels in
/// collective firing but gives differential pairs a pure yaw torque.
struct ThrusterLayout {
  double azimuth_offset = 0.0; ///< [rad] first mount azimuth from +x
  double cant_angle = 0.0;     ///< [rad] thrust axis off body z
  double arm_radius = 0.20;    ///< [m] mount circle radius
  double mount_height = 0.189; ///< [m] mount plane above center of mass
  double yaw_twist = 0.0;      ///< [rad] radial-to-tangential rotation

  std::array<Vec3, 4> mount_position{};  ///< [m] body frame
  std::array<Vec3, 4> thrust_direction{};///< unit vectors, force on vehicle
};

/// Build the four-thruster ring. Angles in radians.
ThrusterLayout build_layout(double azimuth_offset, double cant_angle,
                            double arm_radius, double mount_height,
                            double yaw_twist);

/// Net body-frame force and torque about the center of mass for a set
/// of per-thruster thrust magnitudes [N].
struct BodyWrench {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

BodyWrench wrench(const ThrusterLayout& layout,
                  const std::array<double, 4>& thrusts);

/// Linear map from the four thrust magnitudes to the controlled wrench
/// components (collective body-z force, three torques). Column j is the
/// wrench of one newton on thruster j.
Eigen::Matrix4d allocation_matrix(const ThrusterLayout& layout);

}  // namespace ldsim
