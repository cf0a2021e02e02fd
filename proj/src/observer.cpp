#include "vaa/observer.hpp"

#include <stdexcept>
#include <string>

namespace vaa {

void Gains::validate() const {
  if (!(k > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("gains: k and c must be positive (k = " + std::to_string(k) +
                                ", c = " + std::to_string(c) + ")");
  }
  if (!(alpha > c / (2.0 * k))) {
    throw std::invalid_argument("gains: alpha must exceed c / (2k) = " +
                                std::to_string(c / (2.0 * k)));
  }
}

namespace detail {

Correction correction_terms(const Vector3& vhat, const Vector3& z, const Vector3& v_meas,
                            double k, double c) {
  const Vector3 w = vhat - z;
  const Vector3 y = v_meas - z;
  Correction out;
  out.omega_delta = c * w.cross(y);
  out.u_delta = k * (v_meas - vhat) - out.omega_delta.cross(z);
  out.u_gamma = k * y;
  return out;
}

ObserverTangent observer_derivative(const Matrix3& Rhat, const Vector3& vhat,
                                    const ImuSample& imu, const Vector3& gravity,
                                    const Correction& corr) {
  const Matrix3 Wd = skew(corr.omega_delta);
  ObserverTangent d;
  d.dRhat = Rhat * skew(imu.omega) + Wd * Rhat;
  d.dvhat = Rhat * imu.accel + gravity + Wd * vhat + corr.u_delta;
  d.dz = gravity + corr.u_gamma;
  return d;
}

}  // namespace detail

Correction correction_terms(const ObserverState& obs, const Vector3& v_meas, const Gains& gains) {
  return detail::correction_terms(obs.vhat, obs.z, v_meas, gains.k, gains.c);
}

ObserverTangent observer_derivative(const ObserverState& obs, const ImuSample& imu,
                                    const Vector3& v_meas, const Vector3& gravity,
                                    const Gains& gains) {
  const Correction corr = correction_terms(obs, v_meas, gains);
  return detail::observer_derivative(obs.Rhat.matrix(), obs.vhat, imu, gravity, corr);
}

ErrorState error_state(const SystemState& truth, const ObserverState& obs) {
  ErrorState e;
  e.R_E = renormalize(truth.R.matrix() * obs.Rhat.matrix().transpose());
  e.v_E = truth.v - obs.z - e.R_E * (obs.vhat - obs.z);
  return e;
}

double lyapunov(const ErrorState& err, const Gains& gains) {
  return 0.5 * (err.R_E.matrix() - Matrix3::Identity()).squaredNorm() +
         0.5 * gains.alpha * err.v_E.squaredNorm();
}

double lyapunov_derivative_exact(const ErrorState& err, const Vector3& v_meas, const Vector3& z,
                                 const Gains& gains) {
  const Matrix3& R = err.R_E.matrix();
  const Matrix3 sq_minus_i = R * R - Matrix3::Identity();
  const Vector3 y = v_meas - z;
  return -0.5 * gains.c * (sq_minus_i * y).squaredNorm() -
         gains.k * gains.alpha * err.v_E.squaredNorm() -
         gains.c * err.v_E.dot(sq_minus_i * y);
}

double lyapunov_derivative_bound(const ErrorState& err, const Vector3& v_meas, const Vector3& z,
                                 const Gains& gains) {
  const Matrix3& R = err.R_E.matrix();
  const double attitude_term = ((R * R - Matrix3::Identity()) * (v_meas - z)).norm();
  const double gap = attitude_term - err.v_E.norm();
  return -0.5 * gains.c * gap * gap;
}

}  // namespace vaa
