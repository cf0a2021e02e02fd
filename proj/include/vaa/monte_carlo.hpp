#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vaa/analysis.hpp"
#include "vaa/simulator.hpp"

namespace vaa {

struct MonteCarloOptions {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  ConvergenceThresholds thresholds;
  /// Initial attitude errors are drawn uniformly from (0, max_initial_angle].
  double max_initial_angle = 3.14159265358979323846 - 0.05;
  /// Initial velocity estimates are drawn uniformly from [-range, range]^3.
  double vhat_range = 5.0;
  /// Keep the base observer initialization instead of sampling (smoke runs).
  bool zero_perturbation = false;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct MonteCarloRun {
  std::size_t index = 0;
  double initial_attitude_error = 0.0;  ///< rad
  std::size_t axis_index = 0;           ///< index into sphere_grid_162()
  Vector3 vhat0 = Vector3::Zero();
  ConvergenceVerdict verdict;
};

/// Observer initialization of run `index`: Rhat0 = exp(theta b) R0 with b drawn
/// from the 162-point sphere grid and theta uniform in (0, max_initial_angle];
/// vhat0 uniform in the velocity box. z0 is kept from the base scenario.
[[nodiscard]] Scenario monte_carlo_scenario(const Scenario& base, const MonteCarloOptions& options,
                                            std::size_t index, MonteCarloRun* sampled = nullptr);

/// Runs are distributed over worker threads; results are ordered by run
/// index and depend only on (base, options.seed). Runs that abort
/// numerically are reported as diverged.
[[nodiscard]] std::vector<MonteCarloRun> monte_carlo(const Scenario& base,
                                                     const MonteCarloOptions& options);

}  // namespace vaa
