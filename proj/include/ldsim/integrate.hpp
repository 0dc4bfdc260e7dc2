#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "ldsim/fault.hpp"

namespace ldsim {

/// Classical fixed-step RK4 over a flat state vector.
///
/// `deriv(t, x, dxdt)` must fill `dxdt` for the given state. Any
/// non-finite derivative component aborts the run with a SimFault
/// carrying the simulation time, since silently propagating a NaN
/// through telemetry is worse than stopping.
template <std::size_t N>
using DerivFn = std::function<void(double, const std::array<double, N>&,
                                   std::array<double, N>&)>;

template <std::size_t N>
void check_finite(const std::array<double, N>& v, double t, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw SimFault(std::string("non-finite ") + what, t);
  }
}

template <std::size_t N>
std::array<double, N> rk4_step(const DerivFn<N>& deriv,
                               const std::array<double, N>& x0, double t,
                               double dt) {
  std::array<double, N> k1, k2, k3, k4, tmp;

  deriv(t, x0, k1);
  check_finite(k1, t, "derivative");
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x0[i] + 0.5 * dt * k1[i];

  deriv(t + 0.5 * dt, tmp, k2);
  check_finite(k2, t, "derivative");
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x0[i] + 0.5 * dt * k2[i];

  deriv(t + 0.5 * dt, tmp, k3);
  check_finite(k3, t, "derivative");
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x0[i] + dt * k3[i];

  deriv(t + dt, tmp, k4);
  check_finite(k4, t, "derivative");

  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = x0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

/// Scalar convenience overload for one-dimensional ODEs.
inline double rk4_step_scalar(const std::function<double(double, double)>& f,
                              double x0, double t, double dt) {
  DerivFn<1> deriv = [&f](double tt, const std::array<double, 1>& x,
                          std::array<double, 1>& dx) { dx[0] = f(tt, x[0]); };
  return rk4_step<1>(deriv, {x0}, t, dt)[0];
}

}  // namespace ldsim
