#pragma once

#include <cstdint>

#include "ldsim/fault.hpp"

namespace ldsim {

/// Environment the vehicle flies in: uniform gravity, a constant ambient
/// pressure (effectively vacuum on the lunar surface) and a flat ground
/// plane. No atmosphere model beyond the back-pressure term.
struct WorldModel {
  double gravity = 1.62;            ///< [m/s^2], positive down
  double ambient_pressure = 3e-10;  ///< [Pa]
  double ground_height = 0.0;       ///< [m], z of the landing plane

  void validate() const {
    if (!(gravity > 0.0)) throw ConfigError("world.gravity must be > 0");
    if (!(ambient_pressure >= 0.0))
      throw ConfigError("world.ambient_pressure must be >= 0");
  }
};

/// Fixed-step integration settings shared by every run of a scenario.
struct SimConfig {
  double dt = 0.005;           ///< [s], fixed integrator step
  double max_duration = 600.0; ///< [s], watchdog cap on one flight
  std::uint64_t seed = 1;

  void validate() const {
    if (!(dt > 0.0) || dt > 0.01)
      throw ConfigError("sim.dt must lie in (0, 0.01] s");
    if (!(max_duration > 0.0))
      throw ConfigError("sim.max_duration must be > 0");
  }
};

}  // namespace ldsim
