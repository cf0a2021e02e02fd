#pragma once

#include <cstddef>
#include <string>

#include "vaa/observer.hpp"
#include "vaa/trajectory.hpp"
#include "vaa/vehicle_model.hpp"

namespace vaa {

/// One closed-loop simulation: signals, initial truth and observer, gains,
/// horizon and integration scheme.
struct Scenario {
  std::string name;
  InputSignal inputs;
  SystemState x0;
  ObserverState obs0;
  Gains gains;
  double horizon = 0.0;
  double dt = 0.0;
  Integrator integrator = Integrator::euler;

  /// Throws ConfigError when dt <= 0, horizon < dt, gains are invalid or a
  /// signal coefficient is not finite.
  void validate() const;

  /// Number of logged rows, floor(horizon / dt) + 1.
  [[nodiscard]] std::size_t row_count() const;
};

struct StatePair {
  SystemState truth;
  ObserverState observer;
};

/// Truth and observer state in raw form, closed under the vector-space
/// operations the Runge-Kutta stages need.
struct JointState {
  Matrix3 R = Matrix3::Identity();
  Vector3 v = Vector3::Zero();
  Matrix3 Rhat = Matrix3::Identity();
  Vector3 vhat = Vector3::Zero();
  Vector3 z = Vector3::Zero();

  JointState operator+(const JointState& o) const {
    return {R + o.R, v + o.v, Rhat + o.Rhat, vhat + o.vhat, z + o.z};
  }
  friend JointState operator*(double s, const JointState& x) {
    return {s * x.R, s * x.v, s * x.Rhat, s * x.vhat, s * x.z};
  }
};

/// Closed-loop vector field: truth dynamics plus the observer driven by the
/// truth's velocity measurement.
[[nodiscard]] JointState closed_loop_derivative(const JointState& x, const ImuSample& imu,
                                                const Vector3& gravity, const Gains& gains);

/**
 * @brief Advance truth and observer from time t by scenario.dt.
 *
 * - euler: explicit Euler on raw matrices, then both rotations renormalized.
 * - rk4: classical RK4 on the joint state, then both rotations renormalized.
 * - geometric_euler: R <- R exp(dt Omega), Rhat <- exp(dt Omega_delta) Rhat
 *   exp(dt Omega); vectors by explicit Euler. No renormalization.
 *
 * Throws NumericalError if the new state is not finite.
 */
[[nodiscard]] StatePair step(const StatePair& state, double t, const Scenario& scenario);

/// Logged row for a state pair at time t.
[[nodiscard]] TrajectoryRow make_row(double t, const StatePair& state, const Gains& gains);

/// Full rollout. Throws NumericalError naming the first non-finite row.
[[nodiscard]] TrajectoryRecord run(const Scenario& scenario);

}  // namespace vaa
