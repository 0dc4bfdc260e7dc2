#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ldsim/scenario.hpp"
#include "ldsim/telemetry.hpp"

using namespace ldsim;
namespace fs = std::filesystem;

TEST_CASE("empty config yields the calibrated baseline") {
  Scenario s = parse_scenario("{}", "test");
  CHECK(s.flight.engine.thrust_efficiency ==
        doctest::Approx(0.9390391220435156).epsilon(1e-12));
  CHECK(s.flight.vehicle.wet_mass == 15.0);
  CHECK(s.flight.profile.kind == ProfileKind::kSemiBallistic);
  CHECK(s.flight.sim.seed == 1);
  CHECK(s.flight.estimator.mode == EstimatorMode::kIdeal);
}

TEST_CASE("unknown keys are rejected with their full path") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"engine":{"bogus":1}})", "test"),
                       doctest::Contains("engine.bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"control":{"horizontal":{"kq":2.0}}})", "test"),
      doctest::Contains("control.horizontal.kq"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"thrusters":{}})", "test"),
                       doctest::Contains("thrusters"), ConfigError);
}

TEST_CASE("malformed values name the offending key") {
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"world":{"gravity":"strong"}})", "test"),
      doctest::Contains("world.gravity"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[1,2]", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("{not json", "test"), ConfigError);
}

TEST_CASE("sections override their defaults") {
  Scenario s = parse_scenario(
      R"({"profile":{"kind":"ballistic","horizontal_range":150.0,
           "boost_climb_accel":0.65,"touchdown_vertical_speed":0.8},
          "estimator":{"mode":"strapdown"},
          "sim":{"seed":42}})",
      "test");
  CHECK(s.flight.profile.kind == ProfileKind::kBallistic);
  CHECK(s.flight.profile.horizontal_range == 150.0);
  CHECK(s.flight.estimator.mode == EstimatorMode::kStrapdown);
  CHECK(s.flight.sim.seed == 42);

  CHECK_THROWS_AS(
      parse_scenario(R"({"estimator":{"mode":"psychic"}})", "test"),
      ConfigError);
}

TEST_CASE("explicit thrust_efficiency suppresses calibration") {
  Scenario s = parse_scenario(
      R"({"engine":{"thrust_efficiency":0.95,"target_isp":0.0}})", "test");
  CHECK(s.flight.engine.thrust_efficiency == 0.95);
}

TEST_CASE("shipped default config matches the built-in defaults") {
  Scenario builtin = parse_scenario("{}", "defaults");
  Scenario shipped = load_scenario("configs/default.json");
  CHECK(shipped.flight.engine.thrust_efficiency ==
        builtin.flight.engine.thrust_efficiency);
  CHECK(shipped.flight.vehicle.wet_mass == builtin.flight.vehicle.wet_mass);
  CHECK(shipped.flight.vehicle.cant_angle == builtin.flight.vehicle.cant_angle);
  CHECK(shipped.flight.profile.kind == builtin.flight.profile.kind);
  CHECK(shipped.flight.profile.cruise_altitude ==
        builtin.flight.profile.cruise_altitude);
  CHECK(shipped.flight.sim.seed == builtin.flight.sim.seed);
  CHECK(shipped.flight.limits.max_tilt == builtin.flight.limits.max_tilt);
}

TEST_CASE("component limits table skips rows without numbers") {
  std::vector<ComponentLimit> limits =
      load_component_limits("data/component_temp_limits.csv");
  REQUIRE(limits.size() == 12);
  CHECK(limits.front().subsystem == "Propulsion");
  CHECK(limits.front().component == "Fuel and pressurant");
  CHECK(limits.front().min_c == 8.0);
  CHECK(limits.front().max_c == 53.0);

  for (const ComponentLimit& l : limits) {
    CHECK(l.component != "Flash LiDAR");
    CHECK(l.min_c < l.max_c);
  }
  CHECK_THROWS_AS(load_component_limits("data/no_such_file.csv"), ConfigError);
}

TEST_CASE("telemetry csv round trips through text") {
  TelemetryLog log;
  TelemetryRecord rec;
  rec.t = 0.005;
  rec.position = {1.5, -2.25, 10.125};
  rec.velocity = {0.5, 0.0, -1.75};
  rec.quaternion = {1.0, 0.0, 0.0, 0.0};
  rec.angular_rate = {0.25, 0.0, -0.125};
  rec.wet_mass = 15.0;
  rec.commanded_flow = {0.014, 0.0, 0.007, 0.0};
  rec.actual_flow = {0.0105, 0.0, 0.00525, 0.0};
  rec.thrust = {23.8375, 0.0, 11.921875, 0.0};
  rec.propellant_used = 0.0625;
  rec.phase = "Cruise";
  rec.flags = kFlagAllocatorSaturated;
  log.append(rec);

  TelemetryRecord next = rec;
  next.t = 0.010;
  next.phase = "BallisticDescent";
  next.flags = 0;
  log.append(next);

  TelemetryLog parsed = TelemetryLog::parse_csv(log.to_csv());
  REQUIRE(parsed.size() == 2);
  const TelemetryRecord& got = parsed.records().front();
  CHECK(got.t == rec.t);
  CHECK(got.position == rec.position);
  CHECK(got.quaternion == rec.quaternion);
  CHECK(got.thrust == rec.thrust);
  CHECK(got.phase == "Cruise");
  CHECK(got.flags == kFlagAllocatorSaturated);
  CHECK(parsed.records().back().phase == "BallisticDescent");

  // And through a file on disk.
  fs::path tmp = fs::temp_directory_path() / "ldsim_roundtrip_test.csv";
  log.save_csv(tmp);
  TelemetryLog loaded = TelemetryLog::load_csv(tmp);
  CHECK(loaded.to_csv() == log.to_csv());
  fs::remove(tmp);
}

TEST_CASE("telemetry rejects corrupt appends") {
  TelemetryLog log;
  TelemetryRecord rec;
  rec.t = 1.0;
  rec.quaternion = {1.0, 0.0, 0.0, 0.0};
  rec.phase = "Cruise";
  log.append(rec);

  TelemetryRecord backwards = rec;
  backwards.t = 0.5;
  CHECK_THROWS_AS(log.append(backwards), SimFault);

  TelemetryRecord broken = rec;
  broken.t = 2.0;
  broken.position[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(log.append(broken), SimFault);
  CHECK(log.size() == 1);
}

TEST_CASE("nine significant digit formatting is shortest-form") {
  CHECK(format_g9(0.1) == "0.1");
  CHECK(format_g9(15.0) == "15");
  CHECK(format_g9(1.0 / 3.0) == "0.333333333");
  CHECK(format_g9(-2.5e-7) == "-2.5e-07");
  CHECK(format_g9(0.0) == "0");
}
