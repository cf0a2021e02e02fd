#include "vaa/vehicle_model.hpp"

namespace vaa {

Vector3 SinusoidSignal::operator()(double t) const {
  return offset + amplitude.cwiseProduct((frequency * t + phase).array().sin().matrix());
}

bool SinusoidSignal::is_finite() const {
  return offset.allFinite() && amplitude.allFinite() && frequency.allFinite() &&
         phase.allFinite();
}

namespace detail {

SystemTangent system_derivative(const Matrix3& R, const ImuSample& u, const Vector3& gravity) {
  return {R * skew(u.omega), R * u.accel + gravity};
}

}  // namespace detail

SystemTangent system_derivative(const SystemState& s, const ImuSample& u,
                                const Vector3& gravity) {
  return detail::system_derivative(s.R.matrix(), u, gravity);
}

Matrix4 lifted_derivative(const GroupElement& X, const TangentElement& U,
                          const TangentElement& G) {
  const Matrix4 x = X.homogeneous();
  return x * U.homogeneous() + G.homogeneous() * x;
}

ScenarioSignals paper_scenario() {
  ScenarioSignals out;
  out.inputs.omega = SinusoidSignal::constant({0.0, 0.0, 1.0});
  out.inputs.accel.offset = {0.0, 0.0, -9.81};
  out.inputs.accel.amplitude = {5.0, 0.0, 0.0};
  out.inputs.accel.frequency = {5.0, 0.0, 0.0};
  out.inputs.gravity = {0.0, 0.0, 9.81};
  out.initial = SystemState{Rotation::identity(), Vector3::Zero()};
  return out;
}

}  // namespace vaa
