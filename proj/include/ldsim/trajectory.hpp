#pragma once

#include <string>
#include <vector>

#include "ldsim/constants.hpp"
#include "ldsim/layout.hpp"
#include "ldsim/phase.hpp"
#include "ldsim/world.hpp"

namespace ldsim {

enum class ProfileKind {
  kBallistic,
  kConstantAltitude,
  kCombined,
  kSemiBallistic,
};

const char* to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& name);

/// Shape parameters for the reference generators. Distances in metres,
/// speeds in m/s, accelerations in m/s^2, angles in radians.
struct ProfileParams {
  ProfileKind kind = ProfileKind::kSemiBallistic;
  double horizontal_range = 400.0;   // total ground distance covered
  bool round_trip = false;           // out to range/2 and back when true
  double cruise_altitude = 50.0;     // arc apex / cruise height
  double ballistic_apex = 120.0;     // apex for the pure ballistic hop
  double vtol_height = 5.0;          // strictly vertical segment (semi-ballistic)
  double max_horizontal_speed = 30.0;
  double cruise_accel = 0.50;        // horizontal accel during cruise legs
  double climb_speed = 4.0;
  double descent_speed = 3.0;
  double vertical_accel = 1.2;       // must stay below lunar g (thrust >= 0)
  double boost_climb_accel = 1.3;    // net upward accel during arc boost
  double boost_tilt = 15.0 * kPi / 180.0;  // thrust tilt held during arc boost
  double touchdown_vertical_speed = 0.0;   // residual sink rate at contact
  double sample_interval = 0.01;

  void validate(const WorldModel& world) const;
};

struct ReferencePoint {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  FlightPhase hint = FlightPhase::kIdle;
};

/// Densely sampled reference path plus a few closed-form descriptors of
/// the ideal (impulsive-launch) arc used for reporting and validation.
struct ReferenceTrajectory {
  ProfileKind kind = ProfileKind::kSemiBallistic;
  double sample_interval = 0.01;
  double duration = 0.0;
  std::vector<ReferencePoint> points;

  // Equivalent impulsive-launch arc parameters (ballistic kinds only).
  double launch_vertical_speed = 0.0;
  double launch_horizontal_speed = 0.0;
  double time_of_flight = 0.0;

  double peak_altitude = 0.0;
  bool nonzero_touchdown_speed = false;
};

/// Kinematic envelope the reference must respect; mirrors the control
/// limits enforced in flight so the reference is trackable at all.
struct ReferenceLimits {
  double max_tilt = 24.0 * kPi / 180.0;
  double max_horizontal_speed = 17.5;
};

ReferenceTrajectory generate_profile(const ProfileParams& params,
                                     const WorldModel& world,
                                     const ReferenceLimits& limits);

ReferenceTrajectory gen_ballistic(const ProfileParams& params,
                                  const WorldModel& world,
                                  const ReferenceLimits& limits);
ReferenceTrajectory gen_constant_altitude(const ProfileParams& params,
                                          const WorldModel& world,
                                          const ReferenceLimits& limits);
ReferenceTrajectory gen_combined(const ProfileParams& params,
                                 const WorldModel& world,
                                 const ReferenceLimits& limits);
ReferenceTrajectory gen_semi_ballistic(const ProfileParams& params,
                                       const WorldModel& world,
                                       const ReferenceLimits& limits);

/// Linear interpolation between stored samples; clamps to the end
/// points outside [0, duration].
ReferencePoint sample_reference(const ReferenceTrajectory& traj, double t);

}  // namespace ldsim
