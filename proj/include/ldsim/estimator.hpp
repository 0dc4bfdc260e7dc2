#pragma once

#include "ldsim/rigid_body.hpp"
#include "ldsim/rng.hpp"
#include "ldsim/world.hpp"

namespace ldsim {

enum class EstimatorMode { kIdeal, kStrapdown };

/// Strapdown sensor error model. The gyro carries angle random walk and
/// a constant in-run bias; the accelerometer carries a constant bias
/// scaled by the residual left after pre-flight alignment on the pad.
struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::kIdeal;
  double gyro_arw = 4.3633231299858234e-05;   // rad/sqrt(s), 0.15 deg/sqrt(h)
  double gyro_bias_sigma = 1.4544410433286077e-06;  // rad/s, 0.3 deg/h
  double accel_bias_sigma = 4.903325e-04;     // m/s^2, 0.05 mg
  double calibration_residual = 0.1;          // bias fraction surviving alignment

  void validate() const;
};

struct NavState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Quat orientation = Quat::Identity();
  Vec3 angular_rate = Vec3::Zero();  // body frame
};

/// Dead-reckoning navigator. In ideal mode it mirrors truth; in
/// strapdown mode it integrates synthetic IMU measurements built from
/// truth plus the configured error model, so the estimate drifts the way
/// a real inertial solution would.
class Estimator {
 public:
  Estimator() = default;
  Estimator(const EstimatorConfig& config, const WorldModel& world);

  /// Draws the per-run sensor errors and aligns the estimate with truth.
  void init(const RigidBodyState& truth, RandomStream& rng);

  /// Advances one simulation step. `world_accel` is the vehicle's actual
  /// acceleration over the step, gravity included.
  void update(const RigidBodyState& truth, const Vec3& world_accel, double dt,
              RandomStream& rng);

  const NavState& state() const { return state_; }
  const Vec3& gyro_bias() const { return gyro_bias_; }
  const Vec3& accel_bias() const { return accel_bias_; }

 private:
  EstimatorConfig config_;
  WorldModel world_;
  NavState state_;
  Vec3 gyro_bias_ = Vec3::Zero();
  Vec3 accel_bias_ = Vec3::Zero();
};

}  // namespace ldsim
