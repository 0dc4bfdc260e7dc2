#include "ldsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ldsim/fault.hpp"

namespace ldsim {
namespace {

// One-dimensional speed plan between boundary speeds with a shared
// acceleration magnitude on both ramps. Distances are positive here;
// callers apply the travel direction.
struct Trapezoid1D {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double v_in = 0.0, v_peak = 0.0, v_out = 0.0;
  double accel = 0.0;

  double duration() const { return t1 + t2 + t3; }

  void eval(double tau, double& s, double& v, double& a) const {
    if (tau < t1) {
      s = v_in * tau + 0.5 * accel * tau * tau;
      v = v_in + accel * tau;
      a = accel;
      return;
    }
    double s1 = v_in * t1 + 0.5 * accel * t1 * t1;
    if (tau < t1 + t2) {
      double u = tau - t1;
      s = s1 + v_peak * u;
      v = v_peak;
      a = 0.0;
      return;
    }
    double s2 = s1 + v_peak * t2;
    double u = std::min(tau - t1 - t2, t3);
    s = s2 + v_peak * u - 0.5 * accel * u * u;
    v = v_peak - accel * u;
    a = -accel;
  }
};

Trapezoid1D plan_trapezoid(double dist, double v_in, double v_out,
                           double v_max, double accel) {
  if (dist <= 0.0 || accel <= 0.0 || v_max <= 0.0) {
    throw ConfigError("trapezoid plan needs positive distance, accel, speed");
  }
  if (v_in < 0.0 || v_out < 0.0 || v_in > v_max + 1e-9 || v_out > v_max + 1e-9) {
    throw ConfigError("trapezoid boundary speed outside [0, v_max]");
  }
  Trapezoid1D plan;
  plan.v_in = v_in;
  plan.v_out = v_out;
  plan.accel = accel;
  double vp = std::sqrt(
      std::max(0.0, (2.0 * accel * dist + v_in * v_in + v_out * v_out) / 2.0));
  if (vp + 1e-9 < std::max(v_in, v_out)) {
    throw ConfigError(
        "segment too short to connect boundary speeds at the allowed "
        "acceleration");
  }
  vp = std::max(vp, std::max(v_in, v_out));
  plan.v_peak = std::min(vp, v_max);
  plan.t1 = (plan.v_peak - v_in) / accel;
  plan.t3 = (plan.v_peak - v_out) / accel;
  double d1 = (plan.v_peak * plan.v_peak - v_in * v_in) / (2.0 * accel);
  double d3 = (plan.v_peak * plan.v_peak - v_out * v_out) / (2.0 * accel);
  double d2 = dist - d1 - d3;
  if (d2 < -1e-6 * std::max(1.0, dist)) {
    throw ConfigError("trapezoid plan inconsistent; segment too short");
  }
  plan.t2 = std::max(0.0, d2) / plan.v_peak;
  return plan;
}

struct Segment {
  double duration = 0.0;
  FlightPhase hint = FlightPhase::kIdle;
  std::function<void(double, Vec3&, Vec3&, Vec3&)> eval;
};

// Assembles piecewise closed-form segments while tracking the end state
// so each new segment starts exactly where the previous one finished.
class PathBuilder {
 public:
  PathBuilder(const Vec3& start, const Vec3& start_velocity)
      : pos_(start), vel_(start_velocity) {}

  const Vec3& position() const { return pos_; }
  const Vec3& velocity() const { return vel_; }
  std::vector<Segment>& segments() { return segments_; }
  double duration() const { return total_; }

  void add_const_accel(const Vec3& acc, double duration, FlightPhase hint) {
    if (duration <= 0.0) return;
    Vec3 p0 = pos_, v0 = vel_;
    segments_.push_back(
        {duration, hint, [p0, v0, acc](double tau, Vec3& p, Vec3& v, Vec3& a) {
           p = p0 + v0 * tau + 0.5 * acc * tau * tau;
           v = v0 + acc * tau;
           a = acc;
         }});
    pos_ = p0 + v0 * duration + 0.5 * acc * duration * duration;
    vel_ = v0 + acc * duration;
    total_ += duration;
  }

  // Horizontal leg along x at constant altitude. `dist` is signed.
  void add_cruise(double dist, double v_out, double v_max, double accel) {
    double dir = dist >= 0.0 ? 1.0 : -1.0;
    double v_in = dir * vel_.x();
    Trapezoid1D plan = plan_trapezoid(std::abs(dist), v_in, v_out, v_max, accel);
    Vec3 p0 = pos_;
    segments_.push_back({plan.duration(), FlightPhase::kCruise,
                         [p0, dir, plan](double tau, Vec3& p, Vec3& v, Vec3& a) {
                           double s, sv, sa;
                           plan.eval(tau, s, sv, sa);
                           p = p0 + Vec3(dir * s, 0.0, 0.0);
                           v = Vec3(dir * sv, 0.0, 0.0);
                           a = Vec3(dir * sa, 0.0, 0.0);
                         }});
    pos_ = p0 + Vec3(dist, 0.0, 0.0);
    vel_ = Vec3(dir * v_out, 0.0, 0.0);
    total_ += plan.duration();
  }

  // Vertical leg between rest states. `dz` is signed.
  void add_vertical(double dz, double v_max, double accel, FlightPhase hint) {
    if (std::abs(dz) < 1e-12) return;
    double dir = dz >= 0.0 ? 1.0 : -1.0;
    Trapezoid1D plan = plan_trapezoid(std::abs(dz), 0.0, 0.0, v_max, accel);
    Vec3 p0 = pos_;
    segments_.push_back({plan.duration(), hint,
                         [p0, dir, plan](double tau, Vec3& p, Vec3& v, Vec3& a) {
                           double s, sv, sa;
                           plan.eval(tau, s, sv, sa);
                           p = p0 + Vec3(0.0, 0.0, dir * s);
                           v = Vec3(0.0, 0.0, dir * sv);
                           a = Vec3(0.0, 0.0, dir * sa);
                         }});
    pos_ = p0 + Vec3(0.0, 0.0, dz);
    vel_ = Vec3::Zero();
    total_ += plan.duration();
  }

 private:
  Vec3 pos_, vel_;
  std::vector<Segment> segments_;
  double total_ = 0.0;
};

// Shape of one powered-coast-powered arc between a base altitude and the
// apex. The boost holds a constant thrust tilt, so the powered portions
// are constant-acceleration legs and the middle is genuine free fall.
struct ArcShape {
  double boost_time = 0.0;    // powered ramp duration
  double coast_time = 0.0;    // free-fall time from boost end to apex
  double ax = 0.0;            // horizontal accel during boost
  double az = 0.0;            // net vertical accel during boost
  double exit_vertical_speed = 0.0;
  double horizontal_speed = 0.0;  // speed at apex, carried through cruise
  double footprint = 0.0;         // ground distance consumed by the arc
};

ArcShape plan_arc(double height, double climb_accel, double tilt,
                  double gravity) {
  if (height <= 0.0) {
    throw ConfigError("arc height must be positive");
  }
  ArcShape arc;
  arc.az = climb_accel;
  arc.boost_time =
      std::sqrt(2.0 * height * gravity / (climb_accel * (gravity + climb_accel)));
  arc.ax = std::tan(tilt) * (gravity + climb_accel);
  arc.exit_vertical_speed = climb_accel * arc.boost_time;
  arc.coast_time = arc.exit_vertical_speed / gravity;
  arc.horizontal_speed = arc.ax * arc.boost_time;
  arc.footprint = 0.5 * arc.ax * arc.boost_time * arc.boost_time +
                  arc.horizontal_speed * arc.coast_time;
  return arc;
}

void add_ascent_arc(PathBuilder& b, const ArcShape& arc, double dir,
                    double gravity) {
  b.add_const_accel(Vec3(dir * arc.ax, 0.0, arc.az), arc.boost_time,
                    FlightPhase::kBallisticAscent);
  b.add_const_accel(Vec3(0.0, 0.0, -gravity), arc.coast_time,
                    FlightPhase::kBallisticAscent);
}

// Descent mirror. sigma_f scales the brake so a residual fraction of the
// entry velocity survives at the end (purely ballistic touchdown); zero
// brings the path to rest at the base altitude.
void add_descent_arc(PathBuilder& b, const ArcShape& arc, double dir,
                     double gravity, double sigma_f) {
  b.add_const_accel(Vec3(0.0, 0.0, -gravity), arc.coast_time,
                    FlightPhase::kBallisticDescent);
  double drop = 0.5 * arc.az * arc.boost_time * arc.boost_time;
  double vze = arc.exit_vertical_speed;
  double brake_time = 2.0 * drop / ((1.0 + sigma_f) * vze);
  double k = (1.0 - sigma_f) / brake_time;
  Vec3 acc(-dir * k * arc.horizontal_speed, 0.0, k * vze);
  b.add_const_accel(acc, brake_time, FlightPhase::kBallisticDescent);
}

void check_tilt(double ax, double az, double gravity, double max_tilt,
                const char* what) {
  double tilt = std::atan2(std::abs(ax), gravity + az);
  if (tilt > max_tilt + 1e-9) {
    throw ConfigError(std::string(what) +
                      " needs a thrust tilt of " +
                      std::to_string(tilt * 180.0 / kPi) +
                      " deg, above the configured limit");
  }
}

ReferenceTrajectory sample_segments(PathBuilder& b, const ProfileParams& params,
                                    ProfileKind kind) {
  ReferenceTrajectory traj;
  traj.kind = kind;
  traj.sample_interval = params.sample_interval;
  traj.duration = b.duration();
  const auto& segs = b.segments();
  std::size_t n = static_cast<std::size_t>(traj.duration / params.sample_interval) + 2;
  traj.points.reserve(n);

  std::size_t seg = 0;
  double seg_start = 0.0;
  auto emit = [&](double t) {
    while (seg + 1 < segs.size() && t > seg_start + segs[seg].duration + 1e-12) {
      seg_start += segs[seg].duration;
      ++seg;
    }
    ReferencePoint pt;
    pt.t = t;
    double tau = std::min(t - seg_start, segs[seg].duration);
    segs[seg].eval(tau, pt.position, pt.velocity, pt.acceleration);
    pt.hint = segs[seg].hint;
    traj.points.push_back(pt);
    traj.peak_altitude = std::max(traj.peak_altitude, pt.position.z());
  };

  double t = 0.0;
  while (t < traj.duration - 1e-9) {
    emit(t);
    t += params.sample_interval;
  }
  emit(traj.duration);
  return traj;
}

double effective_max_speed(const ProfileParams& params,
                           const ReferenceLimits& limits) {
  return std::min(params.max_horizontal_speed, limits.max_horizontal_speed);
}

void check_cruise_tilt(const ProfileParams& params, const WorldModel& world,
                       const ReferenceLimits& limits) {
  check_tilt(params.cruise_accel, 0.0, world.gravity, limits.max_tilt,
             "cruise acceleration");
}

}  // namespace

const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::kBallistic: return "ballistic";
    case ProfileKind::kConstantAltitude: return "constant_altitude";
    case ProfileKind::kCombined: return "combined";
    case ProfileKind::kSemiBallistic: return "semi_ballistic";
  }
  return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "ballistic") return ProfileKind::kBallistic;
  if (name == "constant_altitude") return ProfileKind::kConstantAltitude;
  if (name == "combined") return ProfileKind::kCombined;
  if (name == "semi_ballistic") return ProfileKind::kSemiBallistic;
  throw ConfigError("unknown profile kind '" + name + "'");
}

void ProfileParams::validate(const WorldModel& world) const {
  if (horizontal_range <= 0.0) throw ConfigError("horizontal_range must be > 0");
  if (cruise_altitude <= 0.0) throw ConfigError("cruise_altitude must be > 0");
  if (ballistic_apex <= 0.0) throw ConfigError("ballistic_apex must be > 0");
  if (vtol_height < 0.0) throw ConfigError("vtol_height must be >= 0");
  if (max_horizontal_speed <= 0.0) {
    throw ConfigError("max_horizontal_speed must be > 0");
  }
  if (cruise_accel <= 0.0 || climb_speed <= 0.0 || descent_speed <= 0.0) {
    throw ConfigError("cruise_accel, climb_speed, descent_speed must be > 0");
  }
  if (vertical_accel <= 0.0 || vertical_accel >= 0.95 * world.gravity) {
    throw ConfigError(
        "vertical_accel must sit below local gravity; the vehicle cannot "
        "push itself downward");
  }
  if (boost_climb_accel <= 0.0) throw ConfigError("boost_climb_accel must be > 0");
  if (boost_tilt <= 0.0 || boost_tilt >= 0.5 * kPi) {
    throw ConfigError("boost_tilt must lie in (0, 90) degrees");
  }
  if (touchdown_vertical_speed < 0.0) {
    throw ConfigError("touchdown_vertical_speed must be >= 0");
  }
  if (sample_interval <= 0.0 || sample_interval > 0.1) {
    throw ConfigError("sample_interval must lie in (0, 0.1] s");
  }
  if (round_trip && kind == ProfileKind::kBallistic) {
    throw ConfigError("round trips are not defined for the ballistic profile");
  }
}

ReferenceTrajectory gen_ballistic(const ProfileParams& params,
                                  const WorldModel& world,
                                  const ReferenceLimits& limits) {
  params.validate(world);
  double g = world.gravity;
  double apex = params.ballistic_apex;
  double range = params.horizontal_range;

  // Equivalent impulsive launch; used for reporting and the speed check.
  double vz0 = std::sqrt(2.0 * g * apex);
  double tof = 2.0 * vz0 / g;
  double vx0 = range / tof;
  double v_max = effective_max_speed(params, limits);
  if (vx0 > v_max) {
    throw ConfigError(
        "ballistic hop needs a horizontal launch speed of " +
        std::to_string(vx0) + " m/s, above the configured maximum");
  }

  ArcShape arc = plan_arc(apex, params.boost_climb_accel, 0.1, g);
  double vze = arc.exit_vertical_speed;
  double drop = 0.5 * arc.az * arc.boost_time * arc.boost_time;
  double sigma_f = 0.0;
  if (params.touchdown_vertical_speed > 0.0) {
    if (params.touchdown_vertical_speed >= vze) {
      throw ConfigError("touchdown_vertical_speed exceeds the arc sink rate");
    }
    sigma_f = params.touchdown_vertical_speed / vze;
  }
  double brake_time = 2.0 * drop / ((1.0 + sigma_f) * vze);
  // Range closure sets the boost tilt: every horizontal distance in the
  // hop scales linearly with the boost's horizontal acceleration.
  double tb = arc.boost_time;
  arc.ax = range / (tb * (0.5 * tb + 2.0 * arc.coast_time +
                          0.5 * (1.0 + sigma_f) * brake_time));
  arc.horizontal_speed = arc.ax * tb;
  arc.footprint = 0.5 * arc.ax * tb * tb + arc.horizontal_speed * arc.coast_time;
  check_tilt(arc.ax, arc.az, g, limits.max_tilt, "ballistic boost");
  if (arc.horizontal_speed > v_max) {
    throw ConfigError("ballistic arc speed exceeds the configured maximum");
  }

  PathBuilder b(Vec3::Zero(), Vec3::Zero());
  add_ascent_arc(b, arc, 1.0, g);
  add_descent_arc(b, arc, 1.0, g, sigma_f);

  ReferenceTrajectory traj = sample_segments(b, params, ProfileKind::kBallistic);
  traj.launch_vertical_speed = vz0;
  traj.launch_horizontal_speed = vx0;
  traj.time_of_flight = tof;
  traj.nonzero_touchdown_speed = sigma_f > 0.0;
  return traj;
}

ReferenceTrajectory gen_constant_altitude(const ProfileParams& params,
                                          const WorldModel& world,
                                          const ReferenceLimits& limits) {
  params.validate(world);
  check_cruise_tilt(params, world, limits);
  double v_max = effective_max_speed(params, limits);
  double alt = params.cruise_altitude;

  PathBuilder b(Vec3::Zero(), Vec3::Zero());
  b.add_vertical(alt, params.climb_speed, params.vertical_accel,
                 FlightPhase::kVerticalAscent);
  if (params.round_trip) {
    double half = 0.5 * params.horizontal_range;
    b.add_cruise(half, 0.0, v_max, params.cruise_accel);
    b.add_cruise(-half, 0.0, v_max, params.cruise_accel);
  } else {
    b.add_cruise(params.horizontal_range, 0.0, v_max, params.cruise_accel);
  }
  b.add_vertical(-alt, params.descent_speed, params.vertical_accel,
                 FlightPhase::kVerticalDescent);
  return sample_segments(b, params, ProfileKind::kConstantAltitude);
}

namespace {

// Shared body of the combined and semi-ballistic generators; they differ
// only in whether a strictly vertical hop brackets the arcs.
ReferenceTrajectory gen_arc_profile(const ProfileParams& params,
                                    const WorldModel& world,
                                    const ReferenceLimits& limits,
                                    double vtol_height, ProfileKind kind) {
  params.validate(world);
  check_cruise_tilt(params, world, limits);
  double g = world.gravity;
  if (params.cruise_altitude <= vtol_height) {
    throw ConfigError("cruise_altitude must exceed the vertical hop height");
  }
  ArcShape arc = plan_arc(params.cruise_altitude - vtol_height,
                          params.boost_climb_accel, params.boost_tilt, g);
  check_tilt(arc.ax, arc.az, g, limits.max_tilt, "arc boost");
  double v_max = effective_max_speed(params, limits);
  if (arc.horizontal_speed > v_max) {
    throw ConfigError("arc exit speed exceeds the configured maximum");
  }

  double sigma_f = 0.0;
  if (params.touchdown_vertical_speed > 0.0) {
    if (vtol_height > 0.0) {
      throw ConfigError(
          "a residual touchdown speed requires a profile without a vertical "
          "landing hop");
    }
    if (params.touchdown_vertical_speed >= arc.exit_vertical_speed) {
      throw ConfigError("touchdown_vertical_speed exceeds the arc sink rate");
    }
    sigma_f = params.touchdown_vertical_speed / arc.exit_vertical_speed;
  }

  double leg = params.round_trip ? 0.5 * params.horizontal_range
                                 : params.horizontal_range;
  double cruise_out = leg - arc.footprint -
                      (params.round_trip ? 0.0 : arc.footprint);
  if (cruise_out <= 0.0) {
    throw ConfigError("horizontal_range too short for the arc footprints");
  }

  PathBuilder b(Vec3::Zero(), Vec3::Zero());
  b.add_vertical(vtol_height, params.climb_speed, params.vertical_accel,
                 FlightPhase::kVerticalAscent);
  add_ascent_arc(b, arc, 1.0, g);
  if (params.round_trip) {
    b.add_cruise(leg - arc.footprint, 0.0, v_max, params.cruise_accel);
    b.add_cruise(-(leg - arc.footprint), arc.horizontal_speed, v_max,
                 params.cruise_accel);
    add_descent_arc(b, arc, -1.0, g, sigma_f);
  } else {
    b.add_cruise(cruise_out, arc.horizontal_speed, v_max, params.cruise_accel);
    add_descent_arc(b, arc, 1.0, g, sigma_f);
  }
  b.add_vertical(-vtol_height, params.descent_speed, params.vertical_accel,
                 FlightPhase::kVerticalDescent);

  ReferenceTrajectory traj = sample_segments(b, params, kind);
  traj.launch_vertical_speed = std::sqrt(2.0 * g * (params.cruise_altitude -
                                                    vtol_height));
  traj.nonzero_touchdown_speed = sigma_f > 0.0;
  return traj;
}

}  // namespace

ReferenceTrajectory gen_combined(const ProfileParams& params,
                                 const WorldModel& world,
                                 const ReferenceLimits& limits) {
  return gen_arc_profile(params, world, limits, 0.0, ProfileKind::kCombined);
}

ReferenceTrajectory gen_semi_ballistic(const ProfileParams& params,
                                       const WorldModel& world,
                                       const ReferenceLimits& limits) {
  return gen_arc_profile(params, world, limits, params.vtol_height,
                         ProfileKind::kSemiBallistic);
}

ReferenceTrajectory generate_profile(const ProfileParams& params,
                                     const WorldModel& world,
                                     const ReferenceLimits& limits) {
  switch (params.kind) {
    case ProfileKind::kBallistic: return gen_ballistic(params, world, limits);
    case ProfileKind::kConstantAltitude:
      return gen_constant_altitude(params, world, limits);
    case ProfileKind::kCombined: return gen_combined(params, world, limits);
    case ProfileKind::kSemiBallistic:
      return gen_semi_ballistic(params, world, limits);
  }
  throw ConfigError("unknown profile kind");
}

ReferencePoint sample_reference(const ReferenceTrajectory& traj, double t) {
  if (traj.points.empty()) {
    throw ConfigError("cannot sample an empty reference trajectory");
  }
  if (t <= traj.points.front().t) return traj.points.front();
  if (t >= traj.points.back().t) {
    ReferencePoint end = traj.points.back();
    end.t = t;
    return end;
  }
  double ratio = t / traj.sample_interval;
  std::size_t i = std::min(static_cast<std::size_t>(ratio),
                           traj.points.size() - 2);
  // Uniform sampling makes the index arithmetic exact except at the
  // appended terminal point; back off if we overshot.
  while (i > 0 && traj.points[i].t > t) --i;
  while (i + 2 < traj.points.size() && traj.points[i + 1].t < t) ++i;
  const ReferencePoint& a = traj.points[i];
  const ReferencePoint& c = traj.points[i + 1];
  double w = (t - a.t) / (c.t - a.t);
  ReferencePoint out;
  out.t = t;
  out.position = a.position + w * (c.position - a.position);
  out.velocity = a.velocity + w * (c.velocity - a.velocity);
  out.acceleration = a.acceleration + w * (c.acceleration - a.acceleration);
  out.hint = w < 0.5 ? a.hint : c.hint;
  return out;
}

}  // namespace ldsim
