#pragma once

#include "vaa/lie_groups.hpp"
#include "vaa/vehicle_model.hpp"

namespace vaa {

/**
 * @brief Observer gains.
 *
 * k weights the velocity innovation and c the attitude innovation. alpha is
 * the velocity weight of the Lyapunov function and is never read by the
 * observer dynamics.
 */
struct Gains {
  double k = 5.0;
  double c = 1.0;
  double alpha = 0.2;

  /// Gains with the default Lyapunov weight alpha = c / k.
  static Gains with_default_alpha(double k, double c) { return {k, c, c / k}; }

  /// Throws std::invalid_argument unless k > 0, c > 0 and alpha > c / (2k).
  void validate() const;
};

struct ObserverState {
  Rotation Rhat;
  Vector3 vhat = Vector3::Zero();
  Vector3 z = Vector3::Zero();  ///< auxiliary state (translation of Z-hat)
};

struct ObserverTangent {
  Matrix3 dRhat = Matrix3::Zero();
  Vector3 dvhat = Vector3::Zero();
  Vector3 dz = Vector3::Zero();
};

/// Error (R R-hat^T, v - z - R R-hat^T (v-hat - z)).
struct ErrorState {
  Rotation R_E;
  Vector3 v_E = Vector3::Zero();
};

struct Correction {
  Vector3 omega_delta = Vector3::Zero();
  Vector3 u_delta = Vector3::Zero();
  Vector3 u_gamma = Vector3::Zero();
};

[[nodiscard]] Correction correction_terms(const ObserverState& obs, const Vector3& v_meas,
                                          const Gains& gains);

[[nodiscard]] ObserverTangent observer_derivative(const ObserverState& obs, const ImuSample& imu,
                                                  const Vector3& v_meas, const Vector3& gravity,
                                                  const Gains& gains);

/// R_E is renormalized onto SO(3) before it is returned.
[[nodiscard]] ErrorState error_state(const SystemState& truth, const ObserverState& obs);

/// 1/2 |R_E - I|_F^2 + alpha/2 |v_E|^2.
[[nodiscard]] double lyapunov(const ErrorState& err, const Gains& gains);

/// Time derivative of lyapunov() along the closed-loop flow, evaluated in
/// closed form from the error state and y = v - z.
[[nodiscard]] double lyapunov_derivative_exact(const ErrorState& err, const Vector3& v_meas,
                                               const Vector3& z, const Gains& gains);

/// Upper bound -c/2 (|(R_E^2 - I) y| - |v_E|)^2 on lyapunov_derivative_exact,
/// valid whenever alpha >= c / (2k).
[[nodiscard]] double lyapunov_derivative_bound(const ErrorState& err, const Vector3& v_meas,
                                               const Vector3& z, const Gains& gains);

namespace detail {

// Raw-matrix kernels used by the integrators, where intermediate stages are
// allowed to leave SO(3).
Correction correction_terms(const Vector3& vhat, const Vector3& z, const Vector3& v_meas,
                            double k, double c);
ObserverTangent observer_derivative(const Matrix3& Rhat, const Vector3& vhat,
                                    const ImuSample& imu, const Vector3& gravity,
                                    const Correction& corr);

}  // namespace detail

}  // namespace vaa
