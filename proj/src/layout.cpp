#include "ldsim/layout.hpp"

#include <cmath>

namespace ldsim {

ThrusterLayout build_layout(double azimuth_offset, double cant_angle,
                            double arm_radius, double mount_height,
                            double yaw_twist) {
  if (!(arm_radius > 0.0)) throw ConfigError("layout.arm_radius must be > 0");
  if (cant_angle < 0.0 || cant_angle >= 1.5707963267948966)
    throw ConfigError("layout.cant_angle must lie in [0, pi/2)");

  ThrusterLayout lay;
  lay.azimuth_offset = azimuth_offset;
  lay.cant_angle = cant_angle;
  lay.arm_radius = arm_radius;
  lay.mount_height = mount_height;
  lay.yaw_twist = yaw_twist;

  const double cb = std::cos(cant_angle);
  const double sb = std::sin(cant_angle);
  const double cx = std::cos(yaw_twist);
  const double sx = std::sin(yaw_twist);
  for (int k = 0; k < 4; ++k) {
    const double psi = azimuth_offset + k * 1.5707963267948966;
    const Vec3 radial(std::cos(psi), std::sin(psi), 0.0);
    const Vec3 tangential(-std::sin(psi), std::cos(psi), 0.0);
    const double sense = (k % 2 == 0) ? 1.0 : -1.0;
    lay.mount_position[k] = arm_radius * radial + Vec3(0, 0, mount_height);
    lay.thrust_direction[k] =
        cb * Vec3(0, 0, 1) + sb * (cx * radial + sense * sx * tangential);
    lay.thrust_direction[k].normalize();
  }
  return lay;
}

BodyWrench wrench(const ThrusterLayout& layout,
                  const std::array<double, 4>& thrusts) {
  BodyWrench w;
  for (int k = 0; k < 4; ++k) {
    if (!(thrusts[k] >= 0.0)) throw ConfigError("wrench: thrusts must be >= 0");
    const Vec3 f = thrusts[k] * layout.thrust_direction[k];
    w.force += f;
    w.torque += layout.mount_position[k].cross(f);
  }
  return w;
}

Eigen::Matrix4d allocation_matrix(const ThrusterLayout& layout) {
  Eigen::Matrix4d m;
  for (int k = 0; k < 4; ++k) {
    const Vec3& u = layout.thrust_direction[k];
    const Vec3 tau = layout.mount_position[k].cross(u);
    m(0, k) = u.z();
    m(1, k) = tau.x();
    m(2, k) = tau.y();
    m(3, k) = tau.z();
  }
  return m;
}

}  // namespace ldsim
