#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vaa/analysis.hpp"
#include "vaa/monte_carlo.hpp"
#include "vaa/simulator.hpp"
#include "vaa/trajectory.hpp"

namespace vaa {

struct AnalyzeOptions {
  double pe_window = 2.0;  ///< s
  ConvergenceThresholds thresholds;
  /// Scenario used to recompute the synchrony residual, if any.
  std::optional<Scenario> synchrony_scenario;
  double synchrony_horizon = 10.0;
  double synchrony_step = 1e-3;
};

struct TrajectoryAnalysis {
  std::string scenario;
  std::size_t rows = 0;
  double initial_attitude_error = 0.0;  ///< rad
  ConvergenceVerdict verdict;
  double pe_window = 0.0;  ///< s
  /// PE report of the logged y = v - z (absent when the window exceeds the data).
  std::optional<PEReport> pe_relative_velocity;
  /// PE report of R a estimated as (v[i+1] - v[i]) / dt - g.
  std::optional<PEReport> pe_specific_force;
  double lyapunov_initial = 0.0;
  double lyapunov_final = 0.0;
  double lyapunov_max_increase = 0.0;  ///< largest step-to-step increase, may be negative
  std::optional<double> synchrony_residual;
};

/// Throws ConfigError on an empty record.
[[nodiscard]] TrajectoryAnalysis analyze_trajectory(const TrajectoryRecord& record,
                                                    const AnalyzeOptions& options = {});

inline constexpr const char* kAnalysisSchema = "vaa-analysis/v1";
inline constexpr const char* kMonteCarloSchema = "vaa-montecarlo/v1";

[[nodiscard]] std::string analysis_to_json(const TrajectoryAnalysis& analysis);
[[nodiscard]] std::string monte_carlo_to_json(const Scenario& base,
                                              const MonteCarloOptions& options,
                                              const std::vector<MonteCarloRun>& runs);

}  // namespace vaa
