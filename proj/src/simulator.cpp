#include "vaa/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "vaa/errors.hpp"
#include "vaa/integrators.hpp"

namespace vaa {

void Scenario::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("scenario '" + name + "': dt must be positive");
  }
  if (!(horizon >= dt) || !std::isfinite(horizon)) {
    throw ConfigError("scenario '" + name + "': horizon must be at least dt");
  }
  try {
    gains.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario '" + name + "': " + e.what());
  }
  if (!inputs.omega.is_finite() || !inputs.accel.is_finite() || !inputs.gravity.allFinite()) {
    throw ConfigError("scenario '" + name + "': input coefficients must be finite");
  }
  if (!x0.v.allFinite() || !obs0.vhat.allFinite() || !obs0.z.allFinite()) {
    throw ConfigError("scenario '" + name + "': initial vectors must be finite");
  }
}

std::size_t Scenario::row_count() const {
  // The relative slack absorbs quotients such as 15 / 0.1 = 149.99999999999997.
  return static_cast<std::size_t>(std::floor(horizon / dt * (1.0 + 1e-12))) + 1;
}

JointState closed_loop_derivative(const JointState& x, const ImuSample& imu,
                                  const Vector3& gravity, const Gains& gains) {
  const SystemTangent dtruth = detail::system_derivative(x.R, imu, gravity);
  const Vector3 v_meas = x.v;
  const Correction corr = detail::correction_terms(x.vhat, x.z, v_meas, gains.k, gains.c);
  const ObserverTangent dobs =
      detail::observer_derivative(x.Rhat, x.vhat, imu, gravity, corr);
  return {dtruth.dR, dtruth.dv, dobs.dRhat, dobs.dvhat, dobs.dz};
}

namespace {

JointState to_joint(const StatePair& s) {
  return {s.truth.R.matrix(), s.truth.v, s.observer.Rhat.matrix(), s.observer.vhat,
          s.observer.z};
}

bool all_finite(const JointState& x) {
  return x.R.allFinite() && x.v.allFinite() && x.Rhat.allFinite() && x.vhat.allFinite() &&
         x.z.allFinite();
}

StatePair from_joint(const JointState& x) {
  if (!all_finite(x)) {
    throw NumericalError("non-finite state");
  }
  try {
    return {SystemState{renormalize(x.R), x.v}, ObserverState{renormalize(x.Rhat), x.vhat, x.z}};
  } catch (const std::invalid_argument& e) {
    throw NumericalError(e.what());
  }
}

StatePair geometric_step(const StatePair& s, double t, const Scenario& sc) {
  const double dt = sc.dt;
  const ImuSample imu = sc.inputs.sample(t);
  const Vector3& g = sc.inputs.gravity;
  const SystemTangent dtruth = system_derivative(s.truth, imu, g);
  const Correction corr = correction_terms(s.observer, measure(s.truth), sc.gains);
  const ObserverTangent dobs = detail::observer_derivative(
      s.observer.Rhat.matrix(), s.observer.vhat, imu, g, corr);

  const Rotation body_increment = exp_so3(dt * imu.omega);
  StatePair next;
  next.truth.R = s.truth.R * body_increment;
  next.truth.v = s.truth.v + dt * dtruth.dv;
  next.observer.Rhat = exp_so3(dt * corr.omega_delta) * s.observer.Rhat * body_increment;
  next.observer.vhat = s.observer.vhat + dt * dobs.dvhat;
  next.observer.z = s.observer.z + dt * dobs.dz;
  if (!all_finite(to_joint(next))) {
    throw NumericalError("non-finite state");
  }
  return next;
}

}  // namespace

StatePair step(const StatePair& state, double t, const Scenario& scenario) {
  const auto field = [&](double tau, const JointState& x) {
    return closed_loop_derivative(x, scenario.inputs.sample(tau), scenario.inputs.gravity,
                                  scenario.gains);
  };
  switch (scenario.integrator) {
    case Integrator::euler:
      return from_joint(euler_step(to_joint(state), t, scenario.dt, field));
    case Integrator::rk4:
      return from_joint(rk4_step(to_joint(state), t, scenario.dt, field));
    case Integrator::geometric_euler:
      return geometric_step(state, t, scenario);
  }
  throw std::logic_error("unhandled integrator");
}

TrajectoryRow make_row(double t, const StatePair& state, const Gains& gains) {
  const ErrorState err = error_state(state.truth, state.observer);
  TrajectoryRow row;
  row.t = t;
  row.R = state.truth.R.matrix();
  row.v = state.truth.v;
  row.Rhat = state.observer.Rhat.matrix();
  row.vhat = state.observer.vhat;
  row.z = state.observer.z;
  row.att_err = attitude_angle(err.R_E);
  row.vel_err = (state.truth.v - state.observer.vhat).norm();
  row.lyap = lyapunov(err, gains);
  return row;
}

TrajectoryRecord run(const Scenario& scenario) {
  scenario.validate();
  TrajectoryRecord record;
  record.scenario = scenario.name;
  record.integrator = scenario.integrator;
  record.dt = scenario.dt;
  record.gains = scenario.gains;
  record.gravity = scenario.inputs.gravity;

  const std::size_t rows = scenario.row_count();
  record.rows.reserve(rows);
  StatePair state{scenario.x0, scenario.obs0};
  record.rows.push_back(make_row(0.0, state, scenario.gains));
  for (std::size_t i = 1; i < rows; ++i) {
    const double t_prev = static_cast<double>(i - 1) * scenario.dt;
    const double t = static_cast<double>(i) * scenario.dt;
    try {
      state = step(state, t_prev, scenario);
    } catch (const NumericalError& e) {
      throw NumericalError("scenario '" + scenario.name + "': numerical abort at row " +
                           std::to_string(i) + " (t = " + std::to_string(t) + "): " + e.what());
    }
    record.rows.push_back(make_row(t, state, scenario.gains));
  }
  return record;
}

}  // namespace vaa
