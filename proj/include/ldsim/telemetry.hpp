#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ldsim {

/// Flag bits carried in the telemetry `flags` column.
enum TelemetryFlag : std::uint32_t {
  kFlagAllocatorSaturated = 1u << 0,  ///< thrust demand hit box constraints
  kFlagFlowClamped = 1u << 1,         ///< commanded flow clamped to valid band
  kFlagHardLanding = 1u << 2,         ///< touchdown above the impact speed limit
};

/// One integrator step of vehicle truth plus actuator state.
struct TelemetryRecord {
  double t = 0.0;                       ///< [s]
  std::array<double, 3> position{};     ///< [m], world frame, z up
  std::array<double, 3> velocity{};     ///< [m/s]
  std::array<double, 4> quaternion{};   ///< w,x,y,z body-to-world
  std::array<double, 3> angular_rate{}; ///< [rad/s], body frame
  double wet_mass = 0.0;                ///< [kg]
  std::array<double, 4> commanded_flow{}; ///< [kg/s] per thruster
  std::array<double, 4> actual_flow{};    ///< [kg/s] per thruster
  std::array<double, 4> thrust{};         ///< [N] per thruster
  double propellant_used = 0.0;         ///< [kg], cumulative
  std::string phase;                    ///< flight phase tag
  std::uint32_t flags = 0;
};

/// Append-only log with CSV persistence. Values are written with nine
/// significant digits so that a rerun with the same seed produces a
/// byte-identical file. Appends reject non-finite or time-reversed
/// records instead of letting a corrupt row reach disk.
class TelemetryLog {
public:
  void append(const TelemetryRecord& rec);

  const std::vector<TelemetryRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

  /// Serialize to CSV text (header plus one line per record).
  std::string to_csv() const;

  /// Write CSV to `path` via a temporary file plus rename, so a crash
  /// mid-write never leaves a truncated file behind.
  void save_csv(const std::filesystem::path& path) const;

  static TelemetryLog load_csv(const std::filesystem::path& path);
  static TelemetryLog parse_csv(const std::string& text);

  /// Documented column order of the CSV, also used as the header row.
  static const char* csv_header();

private:
  std::vector<TelemetryRecord> records_;
};

/// Atomic text file write used for telemetry, reports and sweep tables.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Format one double with nine significant digits (shortest form).
std::string format_g9(double v);

}  // namespace ldsim
