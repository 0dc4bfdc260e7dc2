#include "ldsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <thread>

#include "ldsim/phase.hpp"
#include "ldsim/rng.hpp"
#include "ldsim/valve.hpp"

namespace ldsim {
namespace {

// Snap a value to the precision the telemetry file carries. Report
// summaries fold these snapped values, so a recompute from the saved
// CSV reproduces every figure without slack for formatting loss.
double quantize9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

// Reference lookup that keeps commanding a slow descent once the stored
// trajectory is exhausted, so the vehicle crawls the last fraction of a
// metre into ground contact instead of hovering on the endpoint.
ReferencePoint sample_with_terminal(const ReferenceTrajectory& traj, double t,
                                    double crawl_speed, double ground) {
  if (t <= traj.duration) return sample_reference(traj, t);
  ReferencePoint pt = traj.points.back();
  pt.t = t;
  double dz = crawl_speed * (t - traj.duration);
  pt.position.z() = std::max(pt.position.z() - dz, ground - 1.0);
  pt.velocity = Vec3(0.0, 0.0, -crawl_speed);
  pt.acceleration = Vec3::Zero();
  pt.hint = FlightPhase::kVerticalDescent;
  return pt;
}

long to_steps(double period, double dt, const char* what) {
  double ratio = period / dt;
  long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9) {
    throw ConfigError(std::string(what) +
                      " must be a whole multiple of the integrator step");
  }
  return steps;
}

bool any_flow(const std::array<double, 4>& flow) {
  return flow[0] > 0.0 || flow[1] > 0.0 || flow[2] > 0.0 || flow[3] > 0.0;
}

void fold_row(RecomputedReport& acc, const TelemetryRecord& row,
              const TelemetryRecord* prev, double cruise_altitude) {
  if (prev != nullptr) {
    double span = row.t - prev->t;
    double thrust_sum =
        row.thrust[0] + row.thrust[1] + row.thrust[2] + row.thrust[3];
    acc.total_impulse += thrust_sum * span;
    if (any_flow(row.commanded_flow)) acc.firing_time += span;
    acc.phase_durations[row.phase] += span;
  }
  Quat q(row.quaternion[0], row.quaternion[1], row.quaternion[2],
         row.quaternion[3]);
  Vec3 rpy = euler_rpy(q.normalized());
  acc.max_roll_deg =
      std::max(acc.max_roll_deg, std::abs(rpy.x()) * 180.0 / kPi);
  acc.max_pitch_deg =
      std::max(acc.max_pitch_deg, std::abs(rpy.y()) * 180.0 / kPi);
  acc.max_horizontal_speed = std::max(
      acc.max_horizontal_speed, std::hypot(row.velocity[0], row.velocity[1]));
  acc.max_altitude = std::max(acc.max_altitude, row.position[2]);
  if (row.phase == "Cruise") {
    acc.cruise_altitude_error = std::max(
        acc.cruise_altitude_error, std::abs(row.position[2] - cruise_altitude));
  }
  acc.flight_time = row.t;
  acc.propellant_used = row.propellant_used;
}

void finish_fold(RecomputedReport& acc, const TelemetryRecord& last,
                 const Vec3& pad) {
  acc.average_thrust =
      acc.firing_time > 0.0 ? acc.total_impulse / acc.firing_time : 0.0;
  acc.touchdown_misalignment =
      std::hypot(last.position[0] - pad.x(), last.position[1] - pad.y());
}

}  // namespace

void VehicleSpec::validate() const {
  if (wet_mass <= 0.0 || propellant_load <= 0.0 ||
      propellant_load >= wet_mass) {
    throw ConfigError("vehicle masses must satisfy 0 < propellant < wet");
  }
  if (dimensions.minCoeff() <= 0.0) {
    throw ConfigError("vehicle dimensions must be > 0");
  }
  if (arm_radius <= 0.0) throw ConfigError("arm_radius must be > 0");
  if (mount_height < 0.0) throw ConfigError("mount_height must be >= 0");
}

RunReport simulate_flight(const FlightScenario& scenario, TelemetryLog* log,
                          int run_index) {
  scenario.sim.validate();
  scenario.world.validate();
  scenario.vehicle.validate();
  scenario.limits.validate();
  scenario.estimator.validate();

  const double dt = scenario.sim.dt;
  const long inner_steps =
      to_steps(scenario.gains.inner_period, dt, "control.inner_period");
  const long outer_steps =
      to_steps(scenario.gains.outer_period, dt, "control.outer_period");
  if (outer_steps % inner_steps != 0) {
    throw ConfigError(
        "control.outer_period must be a whole multiple of inner_period");
  }

  const WorldModel& world = scenario.world;
  EngineModel engine(scenario.engine);
  ThrusterLayout layout = build_layout(
      scenario.vehicle.azimuth_offset, scenario.vehicle.cant_angle,
      scenario.vehicle.arm_radius, scenario.vehicle.mount_height,
      scenario.vehicle.yaw_twist);
  InertiaModel inertia{scenario.vehicle.dimensions};
  ReferenceLimits ref_limits{scenario.limits.max_tilt,
                             scenario.limits.max_horizontal_speed};
  ReferenceTrajectory reference =
      generate_profile(scenario.profile, world, ref_limits);

  FlightController controller(scenario.gains, scenario.limits, layout, engine,
                              inertia, world);
  controller.reset();

  RandomStream root(scenario.sim.seed);
  RandomStream est_rng = root.fork(static_cast<std::uint64_t>(run_index));
  Estimator estimator(scenario.estimator, world);

  RigidBodyState state;
  state.position = Vec3(0.0, 0.0, world.ground_height);
  state.wet_mass = scenario.vehicle.wet_mass;
  estimator.init(state, est_rng);

  std::array<ThrusterState, 4> valves{};
  std::vector<std::array<double, 4>> flow_schedule(
      static_cast<std::size_t>(inner_steps), {0.0, 0.0, 0.0, 0.0});
  ControlCommand cmd;

  Vec3 pad = reference.points.back().position;
  pad.z() = world.ground_height;

  RunReport report;
  report.scenario = scenario.name;
  report.profile = to_string(scenario.profile.kind);
  report.seed = scenario.sim.seed;
  report.run_index = run_index;
  report.reference_duration = reference.duration;

  RecomputedReport acc;
  TelemetryRecord last_rec;
  bool have_rec = false;

  FlightPhase phase = FlightPhase::kIdle;
  bool lifted = false;
  bool exhausted = false;
  double propellant_used = 0.0;

  auto record = [&](double t, const std::array<double, 4>& cmd_flow,
                    const std::array<double, 4>& mean_flow,
                    const std::array<double, 4>& thrust, std::uint32_t flags) {
    TelemetryRecord rec;
    rec.t = quantize9(t);
    for (int i = 0; i < 3; ++i) {
      auto j = static_cast<std::size_t>(i);
      rec.position[j] = quantize9(state.position[i]);
      rec.velocity[j] = quantize9(state.velocity[i]);
      rec.angular_rate[j] = quantize9(state.angular_rate[i]);
    }
    rec.quaternion = {
        quantize9(state.orientation.w()), quantize9(state.orientation.x()),
        quantize9(state.orientation.y()), quantize9(state.orientation.z())};
    rec.wet_mass = quantize9(state.wet_mass);
    for (std::size_t i = 0; i < 4; ++i) {
      rec.commanded_flow[i] = quantize9(cmd_flow[i]);
      rec.actual_flow[i] = quantize9(mean_flow[i]);
      rec.thrust[i] = quantize9(thrust[i]);
    }
    rec.propellant_used = quantize9(propellant_used);
    rec.phase = to_string(phase);
    rec.flags = flags;
    fold_row(acc, rec, have_rec ? &last_rec : nullptr,
             scenario.profile.cruise_altitude);
    last_rec = rec;
    have_rec = true;
    if (log != nullptr) log->append(rec);
  };

  record(0.0, {}, {}, {}, 0);

  const long max_steps =
      static_cast<long>(std::ceil(scenario.sim.max_duration / dt));
  std::string abort_reason;
  TouchdownResult touchdown;

  // The reference clock pauses at the vertical-descent hover point until
  // the vehicle has shed the braking attitude and centred over the pad,
  // then the final letdown proceeds. Only a near-zero reference descent
  // rate qualifies as a hover, so ballistic profiles that plunge straight
  // through the low gate are never interrupted.
  double ref_time = 0.0;
  auto descent_hold = [&](const ReferencePoint& ref) {
    if (ref.hint != FlightPhase::kVerticalDescent) return false;
    if (ref.velocity.z() < -0.15) return false;
    const NavState& nav = estimator.state();
    double ex = nav.position.x() - pad.x();
    double ey = nav.position.y() - pad.y();
    double vxy = std::hypot(nav.velocity.x(), nav.velocity.y());
    double cos_tilt = (nav.orientation * Vec3::UnitZ()).z();
    return std::hypot(ex, ey) > scenario.gains.hold_position_gate ||
           vxy > 0.03 || cos_tilt < 0.99939;
  };
  // While held, fly a clean hover over the pad. The raw sample sits on the
  // seam between the braking arc and the letdown and interpolation leaves
  // a stale feedforward in it that would fight the centering loop.
  auto hold_point = [&](const ReferencePoint& raw) {
    ReferencePoint pt = raw;
    pt.position = Vec3(pad.x(), pad.y(), raw.position.z());
    pt.velocity = Vec3::Zero();
    pt.acceleration = Vec3::Zero();
    pt.hint = FlightPhase::kVerticalDescent;
    return pt;
  };

  for (long k = 0; k < max_steps; ++k) {
    double t_next = static_cast<double>(k + 1) * dt;
    long substep = k % inner_steps;

    if (substep == 0) {
      ReferencePoint ref = sample_with_terminal(
          reference, ref_time, scenario.gains.terminal_descent_speed,
          world.ground_height);
      if (descent_hold(ref)) ref = hold_point(ref);
      if (k % outer_steps == 0) {
        controller.outer_update(estimator.state(), ref);
      }
      cmd = controller.inner_update(estimator.state(), ref, state.wet_mass);
      if (cmd.saturated) ++report.saturated_steps;
      for (const PulseCommand& p : cmd.pulses) {
        if (p.suppressed) ++report.suppressed_pulses;
      }
      for (long s = 0; s < inner_steps; ++s) {
        for (std::size_t i = 0; i < 4; ++i) {
          double frac = std::clamp(
              cmd.pulses[i].on_fraction * static_cast<double>(inner_steps) -
                  static_cast<double>(s),
              0.0, 1.0);
          flow_schedule[static_cast<std::size_t>(s)][i] =
              cmd.pulses[i].flow * frac;
        }
      }
    }

    std::array<double, 4> cmd_flow =
        flow_schedule[static_cast<std::size_t>(substep)];
    if (exhausted) cmd_flow = {0.0, 0.0, 0.0, 0.0};

    std::array<double, 4> mean_flow{};
    std::array<double, 4> thrust{};
    double total_flow = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      mean_flow[i] = valve_update(valves[i], cmd_flow[i], dt,
                                  scenario.engine.valve_time_constant);
      thrust[i] = engine.thrust(mean_flow[i], world.ambient_pressure);
      total_flow += mean_flow[i];
    }
    BodyWrench applied = wrench(layout, thrust);

    Vec3 velocity_before = state.velocity;
    state = step_rigid_body(state, applied, total_flow, inertia, world,
                            static_cast<double>(k) * dt, dt);

    if (!lifted) {
      if (state.position.z() > world.ground_height + 1e-3) {
        lifted = true;
      } else if (state.velocity.z() <= 0.0) {
        // Pad reaction holds the vehicle down until thrust beats weight.
        state.position = Vec3(0.0, 0.0, world.ground_height);
        state.velocity = Vec3::Zero();
        state.angular_rate = Vec3::Zero();
      }
    }

    Vec3 world_accel = (state.velocity - velocity_before) / dt;
    estimator.update(state, world_accel, dt, est_rng);

    propellant_used = 0.0;
    for (const ThrusterState& v : valves) {
      propellant_used += v.propellant_consumed;
    }
    if (!exhausted && propellant_used >= scenario.vehicle.propellant_load) {
      exhausted = true;
    }

    std::uint32_t flags = cmd.saturated ? kFlagAllocatorSaturated : 0u;

    ReferencePoint ref_here = sample_with_terminal(
        reference, ref_time, scenario.gains.terminal_descent_speed,
        world.ground_height);
    if (!descent_hold(ref_here)) ref_time += dt;
    ReferencePoint ref_now = sample_with_terminal(
        reference, ref_time, scenario.gains.terminal_descent_speed,
        world.ground_height);
    phase = phase_transition(phase, ref_now.hint, t_next);

    if (lifted) {
      touchdown = touchdown_check(state, world, pad,
                                  scenario.limits.landing_speed_limit);
      if (touchdown.touched) {
        phase = phase_transition(phase, FlightPhase::kTouchdown, t_next);
        state.position.z() = world.ground_height;
        if (touchdown.hard) flags |= kFlagHardLanding;
        record(t_next, cmd_flow, mean_flow, thrust, flags);
        break;
      }
    }

    double cos_tilt = (state.orientation * Vec3::UnitZ()).z();
    if (cos_tilt < 0.5) {
      abort_reason = "attitude departure beyond 60 deg";
    } else if (phase == FlightPhase::kCruise &&
               state.position.z() < world.ground_height + 1.0) {
      abort_reason = "altitude floor violated in cruise";
    } else if (exhausted) {
      abort_reason = "propellant exhausted";
    } else if (t_next >= scenario.sim.max_duration) {
      abort_reason = "timeout";
    }
    if (!abort_reason.empty()) {
      phase = FlightPhase::kAbort;
      record(t_next, cmd_flow, mean_flow, thrust, flags);
      break;
    }

    record(t_next, cmd_flow, mean_flow, thrust, flags);
  }

  finish_fold(acc, last_rec, pad);

  report.flight_time = acc.flight_time;
  report.propellant_used = acc.propellant_used;
  report.total_impulse = acc.total_impulse;
  report.firing_time = acc.firing_time;
  report.average_thrust = acc.average_thrust;
  report.max_pitch_deg = acc.max_pitch_deg;
  report.max_roll_deg = acc.max_roll_deg;
  report.max_horizontal_speed = acc.max_horizontal_speed;
  report.max_altitude = acc.max_altitude;
  report.cruise_altitude_error = acc.cruise_altitude_error;
  report.phase_durations = acc.phase_durations;

  if (abort_reason.empty() && !touchdown.touched) {
    abort_reason = "timeout";
  }
  report.abort_reason = abort_reason;
  report.touchdown.touched = touchdown.touched;
  report.touchdown.hard = touchdown.hard;
  report.touchdown.misalignment = acc.touchdown_misalignment;
  if (touchdown.touched) {
    report.touchdown.impact_speed =
        std::sqrt(last_rec.velocity[0] * last_rec.velocity[0] +
                  last_rec.velocity[1] * last_rec.velocity[1] +
                  last_rec.velocity[2] * last_rec.velocity[2]);
    report.touchdown.vertical_speed = -last_rec.velocity[2];
  }
  report.nominal =
      touchdown.touched && !touchdown.hard && report.abort_reason.empty();
  report.exit_code = report.nominal ? 0 : 1;
  return report;
}

RecomputedReport recompute_from_telemetry(
    const std::vector<TelemetryRecord>& rows, double cruise_altitude,
    const Vec3& pad) {
  RecomputedReport out;
  if (rows.empty()) return out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    fold_row(out, rows[k], k > 0 ? &rows[k - 1] : nullptr, cruise_altitude);
  }
  finish_fold(out, rows.back(), pad);
  return out;
}

ProfileComparison run_profile_comparison(const FlightScenario& base) {
  ProfileComparison out;
  const ProfileKind kinds[] = {ProfileKind::kBallistic,
                               ProfileKind::kConstantAltitude,
                               ProfileKind::kCombined};
  for (ProfileKind kind : kinds) {
    FlightScenario s = base;
    s.profile.kind = kind;
    if (kind == ProfileKind::kBallistic) {
      // A single hop closes range only through its boost, and a short
      // sharp boost would demand more tilt than the airframe allows. A
      // gentler climb stretches the boost and the coast until the tilt
      // fits with control margin to spare.
      s.profile.vtol_height = 0.0;
      s.profile.boost_climb_accel = 0.65;
      if (s.profile.touchdown_vertical_speed <= 0.0) {
        s.profile.touchdown_vertical_speed = 0.8;
      }
    } else {
      s.profile.touchdown_vertical_speed = 0.0;
    }
    out.runs.push_back(simulate_flight(s, nullptr));
  }
  const RunReport& ballistic = out.runs[0];
  const RunReport& constant = out.runs[1];
  const RunReport& combined = out.runs[2];
  out.complete = ballistic.nominal && constant.nominal && combined.nominal;
  out.ordering_ok = ballistic.propellant_used < combined.propellant_used &&
                    combined.propellant_used < constant.propellant_used;
  if (constant.propellant_used > 0.0) {
    out.combined_saving =
        1.0 - combined.propellant_used / constant.propellant_used;
  }
  double low = std::min(ballistic.average_thrust, constant.average_thrust);
  double high = std::max(ballistic.average_thrust, constant.average_thrust);
  out.average_thrust_between =
      combined.average_thrust > low && combined.average_thrust < high;
  return out;
}

VerticalComparison run_vertical_comparison(const FlightScenario& base) {
  VerticalComparison out;
  FlightScenario semi = base;
  semi.profile.kind = ProfileKind::kSemiBallistic;
  semi.profile.touchdown_vertical_speed = 0.0;
  out.semi_ballistic = simulate_flight(semi, nullptr);

  FlightScenario vertical = base;
  vertical.profile.kind = ProfileKind::kConstantAltitude;
  vertical.profile.touchdown_vertical_speed = 0.0;
  out.vertical = simulate_flight(vertical, nullptr);

  out.complete = out.semi_ballistic.nominal && out.vertical.nominal;
  if (out.vertical.propellant_used > 0.0) {
    out.saving = 1.0 - out.semi_ballistic.propellant_used /
                           out.vertical.propellant_used;
  }
  return out;
}

namespace {

MonteCarloStats summarize(const std::string& style,
                          const std::vector<MonteCarloRow>& rows) {
  MonteCarloStats stats;
  stats.style = style;
  double sum = 0.0;
  double sum_sq = 0.0;
  int landed = 0;
  for (const MonteCarloRow& r : rows) {
    if (r.style != style) continue;
    ++stats.runs;
    if (r.aborted) {
      ++stats.aborted;
      continue;
    }
    if (r.hard) ++stats.hard_landings;
    ++landed;
    sum += r.misalignment;
    sum_sq += r.misalignment * r.misalignment;
    stats.max = std::max(stats.max, r.misalignment);
  }
  if (landed > 0) {
    stats.mean = sum / landed;
    double var = sum_sq / landed - stats.mean * stats.mean;
    stats.stddev = var > 0.0 ? std::sqrt(var) : 0.0;
  }
  return stats;
}

}  // namespace

MonteCarloResult run_monte_carlo_landing(const FlightScenario& base,
                                         int n_runs, int threads) {
  if (n_runs < 1) throw ConfigError("monte carlo needs at least one run");

  FlightScenario ballistic = base;
  ballistic.profile.kind = ProfileKind::kBallistic;
  ballistic.profile.vtol_height = 0.0;
  ballistic.profile.boost_climb_accel = 0.65;
  if (ballistic.profile.touchdown_vertical_speed <= 0.0) {
    ballistic.profile.touchdown_vertical_speed = 0.8;
  }
  FlightScenario semi = base;
  semi.profile.kind = ProfileKind::kSemiBallistic;
  semi.profile.touchdown_vertical_speed = 0.0;

  struct PairResult {
    RunReport ballistic;
    RunReport semi;
  };
  std::vector<PairResult> pairs(static_cast<std::size_t>(n_runs));

  unsigned hw = std::thread::hardware_concurrency();
  int workers = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
  workers = std::min(workers, n_runs);

  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      auto j = static_cast<std::size_t>(i);
      pairs[j].ballistic = simulate_flight(ballistic, nullptr, i);
      pairs[j].semi = simulate_flight(semi, nullptr, i);
    }
  };

  if (workers <= 1) {
    work(0, n_runs);
  } else {
    std::vector<std::future<void>> futures;
    int chunk = (n_runs + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int begin = w * chunk;
      int end = std::min(n_runs, begin + chunk);
      if (begin >= end) break;
      futures.push_back(std::async(std::launch::async, work, begin, end));
    }
    for (auto& f : futures) f.get();
  }

  MonteCarloResult out;
  out.rows.reserve(static_cast<std::size_t>(n_runs) * 2);
  for (int i = 0; i < n_runs; ++i) {
    const PairResult& p = pairs[static_cast<std::size_t>(i)];
    out.rows.push_back({i, "ballistic", p.ballistic.touchdown.misalignment,
                        p.ballistic.touchdown.impact_speed,
                        p.ballistic.touchdown.hard,
                        !p.ballistic.abort_reason.empty()});
    out.rows.push_back({i, "semi_ballistic", p.semi.touchdown.misalignment,
                        p.semi.touchdown.impact_speed, p.semi.touchdown.hard,
                        !p.semi.abort_reason.empty()});
  }
  out.ballistic = summarize("ballistic", out.rows);
  out.semi = summarize("semi_ballistic", out.rows);
  return out;
}

}  // namespace ldsim
