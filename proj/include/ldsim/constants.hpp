#pragma once

namespace ldsim {

/// Standard gravity used for specific impulse conversions [m/s^2].
inline constexpr double kG0 = 9.80665;

/// Stefan-Boltzmann constant [W/(m^2 K^4)].
inline constexpr double kStefanBoltzmann = 5.670374419e-8;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace ldsim
