#pragma once

namespace vaa {

/// Classical fourth-order Runge-Kutta step for any State closed under
/// addition and scalar multiplication. f(t, x) returns dx/dt as a State.
template <typename State, typename Deriv>
[[nodiscard]] State rk4_step(const State& x, double t, double dt, Deriv&& f) {
  const State k1 = f(t, x);
  const State k2 = f(t + 0.5 * dt, x + (0.5 * dt) * k1);
  const State k3 = f(t + 0.5 * dt, x + (0.5 * dt) * k2);
  const State k4 = f(t + dt, x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State, typename Deriv>
[[nodiscard]] State euler_step(const State& x, double t, double dt, Deriv&& f) {
  return x + dt * f(t, x);
}

}  // namespace vaa
