#include <doctest.h>

#include <cmath>

#include "ldsim/constants.hpp"
#include "ldsim/engine.hpp"
#include "ldsim/valve.hpp"

using namespace ldsim;

namespace {

// Isentropic area ratio as a function of Mach number, written out
// independently of the solver so the two can cross-check each other.
double area_ratio_of_mach(double mach, double gamma) {
  double a = 2.0 / (gamma + 1.0);
  double b = 1.0 + 0.5 * (gamma - 1.0) * mach * mach;
  double e = (gamma + 1.0) / (2.0 * (gamma - 1.0));
  return std::pow(a * b, e) / mach;
}

}  // namespace

TEST_CASE("nozzle geometry from the configured diameters") {
  EngineSpec spec;
  CHECK(area_ratio(spec) == doctest::Approx(64.0).epsilon(1e-12));

  NozzleSolution sol = solve_nozzle(spec);
  CHECK(sol.throat_area ==
        doctest::Approx(1.4186254326366412e-05).epsilon(1e-12));
  CHECK(sol.exit_area ==
        doctest::Approx(9.079202768874504e-04).epsilon(1e-12));
}

TEST_CASE("exit Mach solver matches frozen references") {
  CHECK(solve_exit_mach(64.0, 1.25) ==
        doctest::Approx(4.932774479234148).epsilon(1e-10));
  CHECK(solve_exit_mach(60.0, 1.25) ==
        doctest::Approx(4.87775861202719).epsilon(1e-10));
}

TEST_CASE("exit Mach solver inverts the area relation") {
  for (double ar : {2.0, 5.0, 25.0, 64.0, 150.0}) {
    for (double g : {1.15, 1.25, 1.4}) {
      double me = solve_exit_mach(ar, g);
      CHECK(me > 1.0);
      CHECK(area_ratio_of_mach(me, g) == doctest::Approx(ar).epsilon(1e-9));
    }
  }
}

TEST_CASE("expansion state at full throttle") {
  EngineSpec spec;
  NozzleSolution sol = solve_nozzle(spec);
  CHECK(sol.cstar == doctest::Approx(1296.5731809428532).epsilon(1e-10));

  double pc = chamber_pressure(spec, 0.014).value;
  CHECK(pc ==
        doctest::Approx(0.014 * 1296.5731809428532 / 1.4186254326366412e-05)
            .epsilon(1e-10));

  CHECK(pc * sol.pressure_ratio == doctest::Approx(1186.661).epsilon(1e-4));
  CHECK(sol.exit_temperature == doctest::Approx(692.8064).epsilon(1e-5));
  CHECK(sol.exit_velocity == doctest::Approx(2340.663).epsilon(1e-5));
}

TEST_CASE("ideal thrust and specific impulse at full flow") {
  EngineModel engine{EngineSpec{}};
  CHECK(engine.thrust(0.014, 0.0) == doctest::Approx(33.8467).epsilon(1e-5));
  CHECK(engine.vacuum_isp(0.014) ==
        doctest::Approx(246.52859989072124).epsilon(1e-10));
}

TEST_CASE("chamber pressure clamps flow outside the throttle band") {
  EngineSpec spec;
  ChamberPressureResult low = chamber_pressure(spec, 0.001);
  CHECK(low.clamped);
  CHECK(low.value == chamber_pressure(spec, spec.flow_min).value);
  ChamberPressureResult high = chamber_pressure(spec, 0.05);
  CHECK(high.clamped);
  CHECK(high.value == chamber_pressure(spec, spec.flow_max).value);
  CHECK_FALSE(chamber_pressure(spec, 0.009).clamped);
}

TEST_CASE("calibration hits the measured impulse") {
  EngineSpec cal = calibrate_engine(EngineSpec{}, 231.5);
  CHECK(cal.thrust_efficiency ==
        doctest::Approx(0.9390391220435156).epsilon(1e-12));

  EngineModel engine{cal};
  for (double mdot : {0.0041, 0.009, 0.014}) {
    CHECK(engine.vacuum_isp(mdot) == doctest::Approx(231.5).epsilon(1e-9));
  }
  CHECK(engine.min_thrust() == doctest::Approx(9.3079818475).epsilon(1e-10));
  CHECK(engine.max_thrust() ==
        doctest::Approx(31.783352649999998).epsilon(1e-10));

  // Choked coupling makes thrust strictly proportional to flow, so one
  // effective exhaust velocity describes the whole band.
  for (double mdot : {0.0041, 0.007, 0.014}) {
    CHECK(engine.thrust(mdot, 0.0) / mdot ==
          doctest::Approx(231.5 * kG0).epsilon(1e-9));
  }
}

TEST_CASE("calibration rejects unreachable targets") {
  CHECK_THROWS_AS(calibrate_engine(EngineSpec{}, 500.0), ConfigError);
  CHECK_THROWS_AS(calibrate_engine(EngineSpec{}, -10.0), ConfigError);
}

TEST_CASE("flow-thrust inversion round trips") {
  EngineModel engine{calibrate_engine(EngineSpec{}, 231.5)};
  for (double f = engine.min_thrust(); f <= engine.max_thrust(); f += 2.0) {
    double mdot = engine.flow_for_thrust(f);
    CHECK(engine.thrust(mdot, 0.0) == doctest::Approx(f).epsilon(1e-9));
  }
}

TEST_CASE("zero flow means a closed valve and zero thrust") {
  EngineModel engine{calibrate_engine(EngineSpec{}, 231.5)};
  CHECK(engine.thrust(0.0, 0.0) == 0.0);
  CHECK(engine.thrust(0.0, 101325.0) == 0.0);
}

TEST_CASE("back pressure only ever reduces thrust") {
  EngineModel engine{calibrate_engine(EngineSpec{}, 231.5)};
  double vac = engine.thrust(0.014, 0.0);
  double moon = engine.thrust(0.014, 3e-10);
  CHECK(moon <= vac);
  CHECK(vac - moon < 1e-9);
}

TEST_CASE("valve follows the exact first-order response") {
  double tau = 0.090;
  ThrusterState st;
  double cmd = 0.014;

  // Many small steps and one big step land on the same exponential.
  for (int i = 0; i < 900; ++i) valve_update(st, cmd, 1e-4, tau);
  CHECK(st.actual_flow / cmd ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));

  ThrusterState one;
  valve_update(one, cmd, 0.090, tau);
  CHECK(one.actual_flow == doctest::Approx(st.actual_flow).epsilon(1e-9));
}

TEST_CASE("valve settles to 99.3 percent after five time constants") {
  double tau = 0.090;
  ThrusterState st;
  for (int i = 0; i < 450; ++i) valve_update(st, 0.014, 1e-3, tau);
  CHECK(st.actual_flow / 0.014 ==
        doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("valve accounting integrates the response exactly") {
  double tau = 0.090;
  double cmd = 0.010;
  double dt = 0.05;
  ThrusterState st;
  double mean = valve_update(st, cmd, dt, tau);
  double decay = std::exp(-dt / tau);
  double expected = cmd * dt - cmd * tau * (1.0 - decay);
  CHECK(st.propellant_consumed == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mean == doctest::Approx(expected / dt).epsilon(1e-12));
}

TEST_CASE("closed valve snaps shut once the residual is unmeterable") {
  ThrusterState st;
  st.actual_flow = 5e-13;
  valve_update(st, 0.0, 0.005, 0.090);
  CHECK(st.actual_flow == 0.0);

  // A real command keeps the exact dynamics no matter how small the
  // starting flow was.
  ThrusterState open;
  open.actual_flow = 5e-13;
  valve_update(open, 0.014, 0.005, 0.090);
  CHECK(open.actual_flow > 0.0);
}

TEST_CASE("pulse modulation throttles, pulses, and suppresses") {
  EngineModel engine{calibrate_engine(EngineSpec{}, 231.5)};
  double period = 0.01;

  PulseCommand steady = pulse_modulate(20.0, period, engine);
  CHECK(steady.on_fraction == 1.0);
  CHECK(engine.thrust(steady.flow, 0.0) == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(steady.impulse == doctest::Approx(20.0 * period).epsilon(1e-12));

  PulseCommand clipped = pulse_modulate(100.0, period, engine);
  CHECK(clipped.flow == doctest::Approx(engine.spec().flow_max).epsilon(1e-12));
  CHECK(clipped.impulse ==
        doctest::Approx(engine.max_thrust() * period).epsilon(1e-9));

  double f_min = engine.min_thrust();
  PulseCommand duty = pulse_modulate(0.5 * f_min, period, engine);
  CHECK(duty.on_fraction == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(duty.flow == doctest::Approx(engine.spec().flow_min).epsilon(1e-12));
  CHECK(duty.impulse ==
        doctest::Approx(0.5 * f_min * period).epsilon(1e-12));

  // Anything whose period impulse falls under the minimum impulse bit
  // is dropped entirely rather than commanded as an unrealizable blip.
  PulseCommand tiny = pulse_modulate(1.0, period, engine);
  CHECK(tiny.suppressed);
  CHECK(tiny.impulse == 0.0);

  CHECK(pulse_modulate(-3.0, period, engine).on_fraction == 0.0);
  CHECK_THROWS_AS(pulse_modulate(5.0, 0.0, engine), ConfigError);
}

TEST_CASE("hover demand lands in the duty-cycle regime") {
  EngineModel engine{calibrate_engine(EngineSpec{}, 231.5)};
  // Per-thruster share of lunar weight for the full drone, corrected
  // for the mounting cant.
  double per_thruster = 15.0 * 1.62 / 4.0 / std::cos(deg2rad(45.0));
  CHECK(per_thruster == doctest::Approx(8.5913).epsilon(1e-4));

  PulseCommand cmd = pulse_modulate(per_thruster, 0.01, engine);
  CHECK(cmd.on_fraction == doctest::Approx(0.9230).epsilon(1e-3));
  CHECK(cmd.on_fraction < 1.0);
}

TEST_CASE("spec validation rejects broken geometry") {
  EngineSpec bad;
  bad.exit_diameter = bad.throat_diameter;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  EngineSpec neg;
  neg.gamma = 0.9;
  CHECK_THROWS_AS(neg.validate(), ConfigError);

  EngineSpec band;
  band.flow_min = band.flow_max + 0.001;
  CHECK_THROWS_AS(band.validate(), ConfigError);
}
