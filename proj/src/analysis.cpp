#include "vaa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vaa/integrators.hpp"

namespace vaa {

SampledSignal sample_signal(const std::function<Vector3(double)>& f, double t0, double t1,
                            double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) {
    throw std::invalid_argument("sample_signal: need dt > 0 and t1 >= t0");
  }
  SampledSignal out{t0, dt, {}};
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / dt * (1.0 + 1e-12))) + 1;
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values.push_back(f(out.time(i)));
  }
  return out;
}

void PEConfig::validate() const {
  if (!(sample_dt > 0.0) || !(window >= 10.0 * sample_dt)) {
    throw std::invalid_argument("PEConfig: need sample_dt > 0 and window >= 10 sample_dt");
  }
}

std::array<double, 3> symmetric_eigenvalues(const Matrix3& s) {
  const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  std::array<double, 3> eig{};
  if (p1 == 0.0) {
    eig = {s(0, 0), s(1, 1), s(2, 2)};
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
  }
  const double q = s.trace() / 3.0;
  const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                    (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Matrix3 b = (s - q * Matrix3::Identity()) / p;
  const double r = std::clamp(0.5 * b.determinant(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  eig[0] = q + 2.0 * p * std::cos(phi);
  eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  eig[1] = 3.0 * q - eig[0] - eig[2];
  return eig;
}

Matrix3 gram_integral(const SampledSignal& signal, std::size_t first, std::size_t last) {
  if (last >= signal.values.size() || first > last) {
    throw std::invalid_argument("gram_integral: sample range out of bounds");
  }
  Matrix3 acc = Matrix3::Zero();
  for (std::size_t i = first; i <= last; ++i) {
    const Vector3& x = signal.values[i];
    const double weight = (i == first || i == last) ? 0.5 : 1.0;
    acc.noalias() += weight * x * x.transpose();
  }
  return signal.dt * acc;
}

namespace {

std::size_t window_intervals(const SampledSignal& signal, double window) {
  if (!(signal.dt > 0.0) || signal.values.size() < 2) {
    throw std::invalid_argument("signal needs at least two uniformly spaced samples");
  }
  const double intervals = std::round(window / signal.dt);
  if (!(intervals >= 1.0)) {
    throw std::invalid_argument("window is shorter than one sample interval");
  }
  if (intervals > static_cast<double>(signal.values.size() - 1)) {
    throw std::invalid_argument("window " + std::to_string(window) +
                                " s is longer than the data horizon " +
                                std::to_string(signal.horizon()) + " s");
  }
  return static_cast<std::size_t>(intervals);
}

}  // namespace

PEReport gram_lambda2(const SampledSignal& signal, double window) {
  const std::size_t m = window_intervals(signal, window);
  PEReport report;
  report.min_lambda2 = std::numeric_limits<double>::infinity();
  const std::size_t starts = signal.values.size() - m;
  report.per_window.reserve(starts);
  for (std::size_t i = 0; i < starts; ++i) {
    // Rounding can leave tiny negative values for singular Gram matrices.
    const double lambda2 = std::max(0.0, symmetric_eigenvalues(gram_integral(signal, i, i + m))[1]);
    report.per_window.emplace_back(signal.time(i), lambda2);
    report.min_lambda2 = std::min(report.min_lambda2, lambda2);
  }
  return report;
}

const std::vector<Vector3>& sphere_grid_162() {
  static const std::vector<Vector3> grid = [] {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vector3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
        {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int level = 0; level < 2; ++level) {
      std::map<std::pair<int, int>, int> midpoints;
      auto midpoint = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        const auto it = midpoints.find(key);
        if (it != midpoints.end()) return it->second;
        verts.push_back((verts[a] + verts[b]).normalized());
        const int idx = static_cast<int>(verts.size()) - 1;
        midpoints.emplace(key, idx);
        return idx;
      };
      std::vector<std::array<int, 3>> next;
      next.reserve(faces.size() * 4);
      for (const auto& f : faces) {
        const int ab = midpoint(f[0], f[1]);
        const int bc = midpoint(f[1], f[2]);
        const int ca = midpoint(f[2], f[0]);
        next.push_back({f[0], ab, ca});
        next.push_back({f[1], bc, ab});
        next.push_back({f[2], ca, bc});
        next.push_back({ab, bc, ca});
      }
      faces = std::move(next);
    }
    return verts;
  }();
  return grid;
}

DirectionalProfile pe_directional_profile(const SampledSignal& signal, double window,
                                          const std::vector<Vector3>& directions) {
  if (!(window > 0.0)) {
    throw std::invalid_argument("pe_directional_profile: empty window");
  }
  const std::size_t m = window_intervals(signal, window);
  const std::size_t n = signal.values.size();
  DirectionalProfile out;
  out.directions = directions;
  out.profile.reserve(directions.size());
  out.mu = std::numeric_limits<double>::infinity();
  std::vector<double> magnitude(n);
  for (const Vector3& raw : directions) {
    const Vector3 b = raw.normalized();
    for (std::size_t i = 0; i < n; ++i) magnitude[i] = b.cross(signal.values[i]).norm();
    // Sliding-window maximum over windows [i, i + m) with a monotone deque.
    std::deque<std::size_t> candidates;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      while (!candidates.empty() && magnitude[candidates.back()] <= magnitude[i]) {
        candidates.pop_back();
      }
      candidates.push_back(i);
      if (candidates.front() + m <= i) candidates.pop_front();
      if (i + 1 >= m) worst = std::min(worst, magnitude[candidates.front()]);
    }
    out.profile.push_back(worst);
    out.mu = std::min(out.mu, worst);
  }
  if (directions.empty()) out.mu = 0.0;
  return out;
}

SampledSignal filter_signal(const SampledSignal& a, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("filter_signal: k must be positive");
  }
  SampledSignal x{a.t0, a.dt, {}};
  if (a.values.empty()) return x;
  x.values.reserve(a.values.size());
  Vector3 state = Vector3::Zero();
  x.values.push_back(state);
  for (std::size_t i = 0; i + 1 < a.values.size(); ++i) {
    const Vector3& a0 = a.values[i];
    const Vector3& a1 = a.values[i + 1];
    const double t0 = a.time(i);
    const auto field = [&](double t, const Vector3& s) -> Vector3 {
      const double frac = (t - t0) / a.dt;
      return a0 + frac * (a1 - a0) - k * s;
    };
    state = rk4_step(state, t0, a.dt, field);
    x.values.push_back(state);
  }
  return x;
}

PEReport filtered_pe_check(const SampledSignal& a, double k, double window) {
  return gram_lambda2(filter_signal(a, k), window);
}

ErrorState unstable_equilibrium(const Rotation& U) {
  const Matrix3 D = Vector3(1.0, -1.0, -1.0).asDiagonal();
  ErrorState eq;
  eq.R_E = Rotation::from_matrix(U.matrix() * D * U.matrix().transpose());
  eq.v_E = Vector3::Zero();
  return eq;
}

Vector3 half_turn_axis(const Rotation& half_turn) {
  if (std::abs(half_turn.trace() + 1.0) > 1e-9) {
    throw std::invalid_argument("half_turn_axis: rotation trace is not -1");
  }
  // R + I = 2 w w^T for a half turn about w.
  const Matrix3 outer = 0.5 * (half_turn.matrix() + Matrix3::Identity());
  Eigen::Index col = 0;
  outer.diagonal().maxCoeff(&col);
  Vector3 axis = outer.col(col).normalized();
  Eigen::Index big = 0;
  axis.cwiseAbs().maxCoeff(&big);
  if (axis[big] < 0.0) axis = -axis;
  return axis;
}

ErrorState perturbation_curve(const ErrorState& eq, const Vector3& axis, double s) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("perturbation_curve: axis must be a unit vector");
  }
  if ((eq.R_E * axis - axis).norm() > 1e-9) {
    throw std::invalid_argument("perturbation_curve: axis is not fixed by R_E");
  }
  return {eq.R_E * exp_so3(s * axis), Vector3::Zero()};
}

ErrorState perturbation_curve(const ErrorState& eq, double s) {
  return perturbation_curve(eq, half_turn_axis(eq.R_E), s);
}

namespace {

struct SyncState {
  Matrix3 R;
  Vector3 v;
  Matrix3 Rhat;
  Vector3 vhat;
  Matrix3 Rz;
  Vector3 z;

  SyncState operator+(const SyncState& o) const {
    return {R + o.R, v + o.v, Rhat + o.Rhat, vhat + o.vhat, Rz + o.Rz, z + o.z};
  }
  friend SyncState operator*(double s, const SyncState& x) {
    return {s * x.R, s * x.v, s * x.Rhat, s * x.vhat, s * x.Rz, s * x.z};
  }
};

Matrix4 synchronous_error(const SyncState& x) {
  const GroupElement X{renormalize(x.R), x.v};
  const GroupElement Xhat{renormalize(x.Rhat), x.vhat};
  const GroupElement Z{renormalize(x.Rz), x.z};
  return compose(compose(inverse(Z), X), compose(inverse(Xhat), Z)).homogeneous();
}

}  // namespace

double synchrony_residual(const InputSignal& inputs, const SystemState& x0,
                          const GroupElement& xhat0, const GroupElement& zhat0, double horizon,
                          double step, const std::optional<Gains>& corrections) {
  if (!(step > 0.0) || !(horizon >= 0.0)) {
    throw std::invalid_argument("synchrony_residual: need step > 0 and horizon >= 0");
  }
  const Vector3& g = inputs.gravity;
  const auto field = [&](double t, const SyncState& x) {
    const ImuSample imu = inputs.sample(t);
    Correction corr;
    if (corrections) {
      corr = detail::correction_terms(x.vhat, x.z, x.v, corrections->k, corrections->c);
    }
    const Matrix3 wd = skew(corr.omega_delta);
    SyncState d;
    d.R = x.R * skew(imu.omega);
    d.v = x.R * imu.accel + g;
    d.Rhat = x.Rhat * skew(imu.omega) + wd * x.Rhat;
    d.vhat = x.Rhat * imu.accel + g + wd * x.vhat + corr.u_delta;
    d.Rz = Matrix3::Zero();
    d.z = g + x.Rz * corr.u_gamma;
    return d;
  };

  SyncState x{x0.R.matrix(), x0.v, xhat0.rot.matrix(), xhat0.vec, zhat0.rot.matrix(), zhat0.vec};
  const Matrix4 e0 = synchronous_error(x);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / step));
  double residual = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    x = rk4_step(x, static_cast<double>(i) * step, step, field);
    x.R = renormalize(x.R).matrix();
    x.Rhat = renormalize(x.Rhat).matrix();
    x.Rz = renormalize(x.Rz).matrix();
    residual = std::max(residual, (synchronous_error(x) - e0).norm());
  }
  return residual;
}

std::string_view to_string(Basin basin) {
  switch (basin) {
    case Basin::stable_identity:
      return "stable_identity";
    case Basin::near_unstable_set:
      return "near_unstable_set";
    case Basin::diverged:
      return "diverged";
  }
  return "unknown";
}

ConvergenceVerdict classify_convergence(const TrajectoryRecord& record,
                                        const ConvergenceThresholds& thresholds) {
  if (record.rows.empty()) {
    throw std::invalid_argument("classify_convergence: empty record");
  }
  const TrajectoryRow& last = record.rows.back();
  ConvergenceVerdict verdict;
  ErrorState err;
  try {
    err = row_error_state(last);
  } catch (const std::invalid_argument&) {
    verdict.terminal_attitude_error = std::numeric_limits<double>::quiet_NaN();
    verdict.terminal_velocity_error = std::numeric_limits<double>::quiet_NaN();
    return verdict;
  }
  verdict.terminal_attitude_error = attitude_angle(err.R_E);
  verdict.terminal_velocity_error = err.v_E.norm();
  const bool velocity_ok = verdict.terminal_velocity_error < thresholds.velocity_tol;
  if (velocity_ok && verdict.terminal_attitude_error < thresholds.attitude_tol) {
    verdict.basin = Basin::stable_identity;
  } else if (velocity_ok && std::abs(err.R_E.trace() + 1.0) < thresholds.trace_tol) {
    verdict.basin = Basin::near_unstable_set;
  } else {
    verdict.basin = Basin::diverged;
  }
  return verdict;
}

}  // namespace vaa
