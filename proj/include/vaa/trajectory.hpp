#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vaa/lie_groups.hpp"
#include "vaa/observer.hpp"

namespace vaa {

enum class Integrator { euler, rk4, geometric_euler };

[[nodiscard]] std::string_view to_string(Integrator integrator);
/// Throws ConfigError on an unknown name.
[[nodiscard]] Integrator parse_integrator(std::string_view name);

struct TrajectoryRow {
  double t = 0.0;
  Matrix3 R = Matrix3::Identity();
  Vector3 v = Vector3::Zero();
  Matrix3 Rhat = Matrix3::Identity();
  Vector3 vhat = Vector3::Zero();
  Vector3 z = Vector3::Zero();
  double att_err = 0.0;  ///< attitude_angle(R_E), rad
  double vel_err = 0.0;  ///< |v - vhat|, m/s
  double lyap = 0.0;
};

/// Time-indexed log of one closed-loop run plus the metadata needed to
/// re-evaluate it offline.
struct TrajectoryRecord {
  std::string scenario;
  Integrator integrator = Integrator::euler;
  double dt = 0.0;
  Gains gains;
  Vector3 gravity = Vector3::Zero();
  std::vector<TrajectoryRow> rows;
};

/// Error state of a logged row.
[[nodiscard]] ErrorState row_error_state(const TrajectoryRow& row);

inline constexpr std::string_view kTrajectorySchema = "vaa-trajectory v1";

/// CSV columns, in order.
[[nodiscard]] const std::vector<std::string>& trajectory_columns();

/// Writes the versioned comment line, the column header and one line per row.
/// Numbers use the shortest round-trip representation, so the output is
/// byte-identical for identical records and parses back exactly.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record);

/// Throws ConfigError naming the offending line or column.
[[nodiscard]] TrajectoryRecord read_trajectory_csv(std::istream& in);
[[nodiscard]] TrajectoryRecord read_trajectory_csv(const std::string& path);

}  // namespace vaa
