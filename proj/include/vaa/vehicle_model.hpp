#pragma once

#include <string>

#include "vaa/lie_groups.hpp"

namespace vaa {

/// True vehicle state. R maps body-frame vectors to the inertial frame, so
/// that v_dot = R a + g with a the body-frame specific acceleration.
struct SystemState {
  Rotation R;
  Vector3 v = Vector3::Zero();
};

/// Time derivative of a SystemState (R_dot is a raw matrix tangent).
struct SystemTangent {
  Matrix3 dR = Matrix3::Zero();
  Vector3 dv = Vector3::Zero();
};

struct ImuSample {
  double t = 0.0;
  Vector3 omega = Vector3::Zero();
  Vector3 accel = Vector3::Zero();
};

/**
 * @brief Analytic per-axis signal offset + amplitude * sin(frequency * t + phase).
 *
 * All operations are component-wise. Constants are the special case
 * amplitude = 0.
 */
struct SinusoidSignal {
  Vector3 offset = Vector3::Zero();
  Vector3 amplitude = Vector3::Zero();
  Vector3 frequency = Vector3::Zero();
  Vector3 phase = Vector3::Zero();

  static SinusoidSignal constant(const Vector3& value) {
    SinusoidSignal s;
    s.offset = value;
    return s;
  }

  [[nodiscard]] Vector3 operator()(double t) const;
  [[nodiscard]] bool is_finite() const;
};

/// IMU input signals plus the (constant) inertial gravity vector.
struct InputSignal {
  SinusoidSignal omega;
  SinusoidSignal accel;
  Vector3 gravity = Vector3::Zero();

  [[nodiscard]] ImuSample sample(double t) const { return {t, omega(t), accel(t)}; }
};

struct ScenarioSignals {
  InputSignal inputs;
  SystemState initial;
};

/// (R Omega^x, R a + g).
[[nodiscard]] SystemTangent system_derivative(const SystemState& s, const ImuSample& u,
                                              const Vector3& gravity);

/// Inertial velocity measurement, noise free.
[[nodiscard]] inline Vector3 measure(const SystemState& s) { return s.v; }

/// Homogeneous-matrix evaluation of X U + G X.
[[nodiscard]] Matrix4 lifted_derivative(const GroupElement& X, const TangentElement& U,
                                        const TangentElement& G);

/// Omega = (0,0,1), a = (5 sin 5t, 0, -9.81), g = (0,0,9.81), R(0) = I, v(0) = 0.
[[nodiscard]] ScenarioSignals paper_scenario();

namespace detail {
SystemTangent system_derivative(const Matrix3& R, const ImuSample& u, const Vector3& gravity);
}  // namespace detail

}  // namespace vaa
