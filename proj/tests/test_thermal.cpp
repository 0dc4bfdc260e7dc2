#include <doctest.h>

#include <cmath>

#include "ldsim/constants.hpp"
#include "ldsim/fault.hpp"
#include "ldsim/thermal.hpp"

using namespace ldsim;

TEST_CASE("radiated power at the launch temperature") {
  ThermalBody body;
  CHECK(radiated_power(278.15, body) ==
        doctest::Approx(277.2322).epsilon(1e-5));

  // Below the sink the net flux reverses sign.
  CHECK(radiated_power(3.0, body) < 0.0);
  CHECK(radiated_power(body.sink_temperature, body) == 0.0);
}

TEST_CASE("equilibrium temperature closed form") {
  ThermalBody body;
  HeatLoad load{500.0};
  double teq = equilibrium_temperature(load, body);
  CHECK(teq == doctest::Approx(322.3373545008078).epsilon(1e-12));

  // At equilibrium the radiator sheds exactly the generated power.
  CHECK(radiated_power(teq, body) == doctest::Approx(500.0).epsilon(1e-9));

  // Quarter-power scaling: 16x the load roughly doubles the temperature.
  double hot = equilibrium_temperature(HeatLoad{8000.0}, body);
  CHECK(hot / teq == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("integration converges to the equilibrium from both sides") {
  ThermalBody body;
  HeatLoad load{500.0};
  double teq = equilibrium_temperature(load, body);

  // The relaxation time constant near equilibrium is about 2200 s, so
  // 200000 s is deep in the settled regime from either start.
  double t_cold = 200.0;
  double t_hot = 450.0;
  for (int i = 0; i < 200000; ++i) {
    t_cold = temperature_step(t_cold, body, load, 1.0);
    t_hot = temperature_step(t_hot, body, load, 1.0);
  }
  CHECK(t_cold == doctest::Approx(teq).epsilon(1e-9));
  CHECK(t_hot == doctest::Approx(teq).epsilon(1e-9));
}

TEST_CASE("step size has fourth-order influence on the 600 s rise") {
  ThermalBody body;
  HeatLoad load{500.0};

  double coarse = body.initial_temperature;
  for (int i = 0; i < 6000; ++i) {
    coarse = temperature_step(coarse, body, load, 0.1);
  }
  double fine = body.initial_temperature;
  for (int i = 0; i < 12000; ++i) {
    fine = temperature_step(fine, body, load, 0.05);
  }
  CHECK(std::abs(coarse - fine) / fine < 1e-3);
  CHECK(std::abs(coarse - fine) < 1e-6);

  // The body warms toward equilibrium without overshooting it.
  CHECK(coarse > body.initial_temperature);
  CHECK(coarse < equilibrium_temperature(load, body));
}

TEST_CASE("sweep matrices are monotone along both grids") {
  ThermalBody body;
  std::vector<double> power{100.0, 200.0, 300.0, 400.0, 500.0,
                            600.0, 700.0, 800.0};
  std::vector<double> eps{0.2, 0.4, 0.6, 0.8, 1.0};
  ThermalSweepResult sweep = thermal_sweep(power, eps, 600.0, body, 0.1);

  REQUIRE(sweep.equilibrium.size() == power.size() * eps.size());
  for (std::size_t e = 0; e < eps.size(); ++e) {
    for (std::size_t p = 1; p < power.size(); ++p) {
      CHECK(sweep.at_equilibrium(p, e) > sweep.at_equilibrium(p - 1, e));
      CHECK(sweep.at_delta(p, e) > sweep.at_delta(p - 1, e));
    }
  }
  for (std::size_t p = 0; p < power.size(); ++p) {
    for (std::size_t e = 1; e < eps.size(); ++e) {
      CHECK(sweep.at_equilibrium(p, e) < sweep.at_equilibrium(p, e - 1));
    }
  }
}

TEST_CASE("sweep cells agree with standalone integration") {
  ThermalBody body;
  ThermalSweepResult sweep =
      thermal_sweep({500.0}, {0.8}, 600.0, body, 0.1);

  double t = body.initial_temperature;
  HeatLoad load{500.0};
  for (int i = 0; i < 6000; ++i) t = temperature_step(t, body, load, 0.1);
  CHECK(sweep.at_delta(0, 0) ==
        doctest::Approx(t - body.initial_temperature).epsilon(1e-12));
  CHECK(sweep.at_equilibrium(0, 0) ==
        doctest::Approx(equilibrium_temperature(load, body)).epsilon(1e-12));
}

TEST_CASE("sweep csv carries the grid as headers") {
  ThermalBody body;
  ThermalSweepResult sweep =
      thermal_sweep({100.0, 200.0}, {0.4, 0.8}, 600.0, body, 0.1);
  std::string csv = sweep_matrix_csv(sweep, sweep.equilibrium);
  CHECK(csv.find("0.4") != std::string::npos);
  CHECK(csv.find("0.8") != std::string::npos);
  CHECK(csv.find("100") != std::string::npos);
  CHECK(csv.find("200") != std::string::npos);
}

TEST_CASE("thermal validation rejects unphysical bodies") {
  ThermalBody bad;
  bad.emissivity = 1.4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  ThermalBody cold;
  cold.initial_temperature = -5.0;
  CHECK_THROWS_AS(cold.validate(), ConfigError);

  ThermalBody zero;
  zero.surface_area = 0.0;
  CHECK_THROWS_AS(zero.validate(), ConfigError);
}
