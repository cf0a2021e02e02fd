#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "vaa/lie_groups.hpp"
#include "vaa/observer.hpp"
#include "vaa/trajectory.hpp"
#include "vaa/vehicle_model.hpp"

namespace vaa {

// ---------------------------------------------------------------------------
// Persistence of excitation
// ---------------------------------------------------------------------------

/// Uniformly spaced samples x(t0 + i dt).
struct SampledSignal {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Vector3> values;

  [[nodiscard]] double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  [[nodiscard]] double horizon() const {
    return values.empty() ? 0.0 : static_cast<double>(values.size() - 1) * dt;
  }
};

/// Samples f on [t0, t1] at spacing dt (t1 included when it falls on the grid).
[[nodiscard]] SampledSignal sample_signal(const std::function<Vector3(double)>& f, double t0,
                                          double t1, double dt);

struct PEConfig {
  double window = 2.0;      ///< s
  double sample_dt = 1e-2;  ///< s

  /// Throws std::invalid_argument unless window >= 10 sample_dt > 0.
  void validate() const;
};

struct PEReport {
  double min_lambda2 = 0.0;
  std::vector<std::pair<double, double>> per_window;  ///< (t_start, lambda2)
};

/// Eigenvalues of a symmetric 3x3 matrix, descending, by the closed-form
/// trigonometric solution of the characteristic polynomial.
[[nodiscard]] std::array<double, 3> symmetric_eigenvalues(const Matrix3& s);

/// Trapezoidal integral of x x^T over samples [first, last].
[[nodiscard]] Matrix3 gram_integral(const SampledSignal& signal, std::size_t first,
                                    std::size_t last);

/**
 * @brief Sliding-window second eigenvalue of the Gram integral of x x^T.
 *
 * One window starts at every sample whose window of round(window / dt)
 * intervals fits in the data. Throws std::invalid_argument if the window is
 * longer than the sampled horizon or shorter than one interval.
 */
[[nodiscard]] PEReport gram_lambda2(const SampledSignal& signal, double window);

/// 162-point geodesic grid on the unit sphere (twice-subdivided icosahedron).
[[nodiscard]] const std::vector<Vector3>& sphere_grid_162();

struct DirectionalProfile {
  std::vector<Vector3> directions;
  /// Per direction b: min over window starts of max over the window of |b x x|.
  std::vector<double> profile;
  /// Minimum of profile, the empirical PE level over the supplied directions.
  double mu = 0.0;
};

/// Direction-resolved PE profile. Throws std::invalid_argument for an empty
/// window or one longer than the data.
[[nodiscard]] DirectionalProfile pe_directional_profile(
    const SampledSignal& signal, double window,
    const std::vector<Vector3>& directions = sphere_grid_162());

/// Integrates x_dot = a - k x from x(0) = 0 by RK4 on the sample grid
/// (midpoints linearly interpolated).
[[nodiscard]] SampledSignal filter_signal(const SampledSignal& a, double k);

/// gram_lambda2 of filter_signal(a, k).
[[nodiscard]] PEReport filtered_pe_check(const SampledSignal& a, double k, double window);

// ---------------------------------------------------------------------------
// Unstable equilibrium set
// ---------------------------------------------------------------------------

/// (U diag(1,-1,-1) U^T, 0).
[[nodiscard]] ErrorState unstable_equilibrium(const Rotation& U);

/// Unit +1-eigenvector of a half-turn rotation, sign fixed so that its
/// largest-magnitude component is positive. Throws std::invalid_argument if
/// tr(R) != -1 within 1e-9.
[[nodiscard]] Vector3 half_turn_axis(const Rotation& half_turn);

/// (R_E exp(s axis), 0). Throws std::invalid_argument if R_E axis != axis
/// within 1e-9 or axis is not a unit vector.
[[nodiscard]] ErrorState perturbation_curve(const ErrorState& eq, const Vector3& axis, double s);

/// As above with axis = half_turn_axis(eq.R_E).
[[nodiscard]] ErrorState perturbation_curve(const ErrorState& eq, double s);

// ---------------------------------------------------------------------------
// Synchrony
// ---------------------------------------------------------------------------

/**
 * @brief Max over time of |E(t) - E(0)|_F for E = Z^-1 X Xhat^-1 Z.
 *
 * Integrates truth, Xhat and the full Z in SE(3) jointly by RK4. Without
 * corrections the observer is the pure internal model. With corrections the
 * innovation terms of `corrections` are applied as Delta = (Omega_d, u_d)
 * and Gamma = (0, u_g).
 */
[[nodiscard]] double synchrony_residual(const InputSignal& inputs, const SystemState& x0,
                                        const GroupElement& xhat0, const GroupElement& zhat0,
                                        double horizon, double step,
                                        const std::optional<Gains>& corrections = std::nullopt);

// ---------------------------------------------------------------------------
// Convergence classification
// ---------------------------------------------------------------------------

enum class Basin { stable_identity, near_unstable_set, diverged };

[[nodiscard]] std::string_view to_string(Basin basin);

struct ConvergenceThresholds {
  double attitude_tol = 1.0 * 3.14159265358979323846 / 180.0;  ///< rad
  double velocity_tol = 1e-3;                                    ///< m/s
  double trace_tol = 1e-2;
};

struct ConvergenceVerdict {
  double terminal_attitude_error = 0.0;  ///< rad
  double terminal_velocity_error = 0.0;  ///< |v_E|, m/s
  Basin basin = Basin::diverged;
};

/// Classifies the terminal row of a record. Throws std::invalid_argument on
/// an empty record.
[[nodiscard]] ConvergenceVerdict classify_convergence(
    const TrajectoryRecord& record, const ConvergenceThresholds& thresholds = {});

}  // namespace vaa
