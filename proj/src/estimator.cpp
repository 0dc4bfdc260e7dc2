#include "ldsim/estimator.hpp"

#include <cmath>

#include "ldsim/fault.hpp"

namespace ldsim {

void EstimatorConfig::validate() const {
  if (gyro_arw < 0.0 || gyro_bias_sigma < 0.0 || accel_bias_sigma < 0.0) {
    throw ConfigError("estimator noise magnitudes must be >= 0");
  }
  if (calibration_residual < 0.0 || calibration_residual > 1.0) {
    throw ConfigError("calibration_residual must lie in [0, 1]");
  }
}

Estimator::Estimator(const EstimatorConfig& config, const WorldModel& world)
    : config_(config), world_(world) {
  config_.validate();
}

void Estimator::init(const RigidBodyState& truth, RandomStream& rng) {
  state_.position = truth.position;
  state_.velocity = truth.velocity;
  state_.orientation = truth.orientation;
  state_.angular_rate = truth.angular_rate;
  gyro_bias_ = Vec3::Zero();
  accel_bias_ = Vec3::Zero();
  if (config_.mode == EstimatorMode::kStrapdown) {
    // Pad alignment before launch calibrates out most of both constant
    // biases; the residual fraction survives. Random walk cannot be
    // calibrated and enters at full strength during update().
    for (int i = 0; i < 3; ++i) {
      gyro_bias_[i] = rng.normal(
          0.0, config_.gyro_bias_sigma * config_.calibration_residual);
    }
    for (int i = 0; i < 3; ++i) {
      accel_bias_[i] = rng.normal(
          0.0, config_.accel_bias_sigma * config_.calibration_residual);
    }
  }
}

void Estimator::update(const RigidBodyState& truth, const Vec3& world_accel,
                       double dt, RandomStream& rng) {
  if (config_.mode == EstimatorMode::kIdeal) {
    state_.position = truth.position;
    state_.velocity = truth.velocity;
    state_.orientation = truth.orientation;
    state_.angular_rate = truth.angular_rate;
    return;
  }

  // Synthetic IMU sample. Specific force excludes gravity; the white
  // gyro noise is scaled so its integral matches the angle random walk.
  double gyro_sigma = config_.gyro_arw / std::sqrt(dt);
  Vec3 gyro = truth.angular_rate + gyro_bias_;
  for (int i = 0; i < 3; ++i) gyro[i] += rng.normal(0.0, gyro_sigma);

  Vec3 gravity(0.0, 0.0, -world_.gravity);
  Vec3 specific_force_body =
      truth.orientation.conjugate() * (world_accel - gravity);
  Vec3 accel = specific_force_body + accel_bias_;

  double angle = gyro.norm() * dt;
  if (angle > 0.0) {
    Quat dq(Eigen::AngleAxisd(angle, gyro.normalized()));
    state_.orientation = (state_.orientation * dq).normalized();
  }
  state_.angular_rate = gyro;
  state_.velocity += (state_.orientation * accel + gravity) * dt;
  state_.position += state_.velocity * dt;
}

}  // namespace ldsim
