#pragma once

#include <stdexcept>
#include <string>

namespace ldsim {

/// Invalid scenario or parameter input. Maps to process exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unrecoverable numeric or logic fault inside a running simulation
/// (non-finite state, illegal phase transition). Maps to exit code 3.
class SimFault : public std::runtime_error {
public:
  SimFault(const std::string& msg, double sim_time)
      : std::runtime_error(msg + " (t=" + std::to_string(sim_time) + " s)"),
        time(sim_time) {}
  double time;
};

}  // namespace ldsim
