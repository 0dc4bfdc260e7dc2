#pragma once

#include <algorithm>
#include <cmath>

namespace ldsim {

/// Scalar PID with clamped integral, clamped output, and a first-order
/// low-pass on the derivative term. The derivative acts on the error
/// signal; callers that need derivative-on-measurement feed the error
/// accordingly.
struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_limit = 0.0;   // symmetric clamp on the integral state
  double output_limit = 0.0;     // symmetric clamp on the output; 0 = none
  double derivative_tau = 0.0;   // filter time constant; 0 = unfiltered
};

class PidController {
 public:
  PidController() = default;
  explicit PidController(const PidGains& gains) : gains_(gains) {}

  void reset() {
    integral_ = 0.0;
    last_error_ = 0.0;
    derivative_ = 0.0;
    primed_ = false;
  }

  double update(double error, double dt) {
    double raw_rate = primed_ ? (error - last_error_) / dt : 0.0;
    if (gains_.derivative_tau > 0.0) {
      double alpha = dt / (gains_.derivative_tau + dt);
      derivative_ += alpha * (raw_rate - derivative_);
    } else {
      derivative_ = raw_rate;
    }
    last_error_ = error;
    primed_ = true;

    integral_ += error * dt;
    if (gains_.integral_limit > 0.0) {
      integral_ = std::clamp(integral_, -gains_.integral_limit,
                             gains_.integral_limit);
    }

    double out = gains_.kp * error + gains_.ki * integral_ +
                 gains_.kd * derivative_;
    if (gains_.output_limit > 0.0) {
      out = std::clamp(out, -gains_.output_limit, gains_.output_limit);
    }
    return out;
  }

  /// Adds an externally computed rate to the derivative path instead of
  /// differencing the error. Keeps the same filter state.
  double update_with_rate(double error, double error_rate, double dt) {
    if (gains_.derivative_tau > 0.0) {
      double alpha = dt / (gains_.derivative_tau + dt);
      derivative_ += alpha * (error_rate - derivative_);
    } else {
      derivative_ = error_rate;
    }
    last_error_ = error;
    primed_ = true;

    integral_ += error * dt;
    if (gains_.integral_limit > 0.0) {
      integral_ = std::clamp(integral_, -gains_.integral_limit,
                             gains_.integral_limit);
    }
    double out = gains_.kp * error + gains_.ki * integral_ +
                 gains_.kd * derivative_;
    if (gains_.output_limit > 0.0) {
      out = std::clamp(out, -gains_.output_limit, gains_.output_limit);
    }
    return out;
  }

  double integral() const { return integral_; }
  const PidGains& gains() const { return gains_; }

 private:
  PidGains gains_;
  double integral_ = 0.0;
  double last_error_ = 0.0;
  double derivative_ = 0.0;
  bool primed_ = false;
};

}  // namespace ldsim
