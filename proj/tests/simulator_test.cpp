#include "vaa/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "vaa/errors.hpp"
#include "vaa/monte_carlo.hpp"
#include "vaa/scenario_io.hpp"

namespace vaa {
namespace {

// Vehicle at rest, no rotation, observer initialized on the truth.
Scenario still_scenario(Integrator integrator, double dt, double horizon) {
  Scenario sc;
  sc.name = "still";
  sc.inputs.omega = SinusoidSignal::constant(Vector3::Zero());
  sc.inputs.accel = SinusoidSignal::constant(Vector3::Zero());
  sc.inputs.gravity = Vector3(0, 0, 9.81);
  sc.x0 = SystemState{Rotation::identity(), Vector3::Zero()};
  sc.obs0 = ObserverState{Rotation::identity(), Vector3::Zero(), Vector3::Zero()};
  sc.gains = Gains::with_default_alpha(5.0, 1.0);
  sc.horizon = horizon;
  sc.dt = dt;
  sc.integrator = integrator;
  return sc;
}

std::string to_csv(const TrajectoryRecord& rec) {
  std::ostringstream out;
  write_trajectory_csv(out, rec);
  return out.str();
}

TEST(ScenarioValidation, RejectsBadSettings) {
  Scenario sc = still_scenario(Integrator::euler, 0.1, 1.0);
  EXPECT_NO_THROW(sc.validate());
  sc.dt = 0.0;
  EXPECT_THROW(sc.validate(), ConfigError);
  sc = still_scenario(Integrator::euler, 0.1, 0.05);
  EXPECT_THROW(sc.validate(), ConfigError);
  sc = still_scenario(Integrator::euler, 0.1, 1.0);
  sc.gains.k = -1.0;
  EXPECT_THROW(sc.validate(), ConfigError);
  sc = still_scenario(Integrator::euler, 0.1, 1.0);
  sc.inputs.accel.amplitude.x() = std::numeric_limits<double>::infinity();
  EXPECT_THROW(sc.validate(), ConfigError);
}

TEST(ScenarioValidation, RowCount) {
  EXPECT_EQ(still_scenario(Integrator::euler, 0.1, 15.0).row_count(), 151u);
  EXPECT_EQ(still_scenario(Integrator::rk4, 1e-3, 1.0).row_count(), 1001u);
  EXPECT_EQ(still_scenario(Integrator::rk4, 0.3, 1.0).row_count(), 4u);
}

TEST(Step, EulerFreeFallFromRest) {
  const Scenario sc = still_scenario(Integrator::euler, 0.1, 1.0);
  const StatePair next = step(StatePair{sc.x0, sc.obs0}, 0.0, sc);
  EXPECT_NEAR(next.truth.v.z(), 0.981, 1e-15);
  EXPECT_EQ(next.truth.v.head<2>(), Eigen::Vector2d::Zero());
  EXPECT_NEAR(next.observer.vhat.z(), 0.981, 1e-15);
}

TEST(Step, EulerScalarDecay) {
  // e = v - vhat obeys e' = -k e when vhat starts off the truth with z = v.
  Scenario sc = still_scenario(Integrator::euler, 0.1, 1.0);
  sc.inputs.gravity = Vector3::Zero();
  sc.x0.v = Vector3(1, 0, 0);
  sc.obs0.z = sc.x0.v;
  const StatePair next = step(StatePair{sc.x0, sc.obs0}, 0.0, sc);
  EXPECT_NEAR((next.truth.v - next.observer.vhat).x(), 0.5, 1e-15);
}

TEST(Step, Rk4LinearSolutionIsExact) {
  const Scenario sc = still_scenario(Integrator::rk4, 0.1, 1.0);
  StatePair s{sc.x0, sc.obs0};
  for (int i = 0; i < 10; ++i) s = step(s, 0.1 * i, sc);
  EXPECT_NEAR(s.truth.v.z(), 9.81, 1e-14);
  EXPECT_LT(s.truth.v.head<2>().norm(), 1e-14);
}

TEST(Step, NonFiniteStateThrows) {
  Scenario sc = still_scenario(Integrator::euler, 0.1, 1.0);
  StatePair s{sc.x0, sc.obs0};
  s.observer.vhat.x() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((void)step(s, 0.0, sc), NumericalError);
}

TEST(Run, PaperScenarioShape) {
  const TrajectoryRecord rec = run(builtin_scenario("paper2022"));
  ASSERT_EQ(rec.rows.size(), 151u);
  EXPECT_EQ(rec.rows.front().t, 0.0);
  EXPECT_NEAR(rec.rows.back().t, 15.0, 1e-12);
  for (std::size_t i = 1; i < rec.rows.size(); ++i) EXPECT_GT(rec.rows[i].t, rec.rows[i - 1].t);
  EXPECT_GT(rec.rows.front().att_err, 150.0 * std::numbers::pi / 180.0);
}

TEST(Run, ZeroErrorStaysOnTruth) {
  for (const char* name : {"zero-error"}) {
    const TrajectoryRecord rec = run(builtin_scenario(name));
    for (const TrajectoryRow& row : rec.rows) {
      EXPECT_LT(row.att_err, 1e-7);
      EXPECT_LT(row.vel_err, 1e-10);
    }
  }
  for (Integrator integ : {Integrator::rk4, Integrator::geometric_euler}) {
    Scenario sc = builtin_scenario("zero-error");
    sc.integrator = integ;
    sc.dt = 1e-2;
    for (const TrajectoryRow& row : run(sc).rows) EXPECT_LT(row.att_err, 1e-7);
  }
}

TEST(Run, RefinedRk4LyapunovIsMonotone) {
  const TrajectoryRecord rec = run(builtin_scenario("paper2022-rk4"));
  ASSERT_EQ(rec.rows.size(), 15001u);
  for (std::size_t i = 1; i < rec.rows.size(); ++i)
    ASSERT_LE(rec.rows[i].lyap, rec.rows[i - 1].lyap + 1e-12) << "row " << i;
}

TEST(Run, DeterministicCsv) {
  const Scenario sc = builtin_scenario("paper2022");
  EXPECT_EQ(to_csv(run(sc)), to_csv(run(sc)));
}

TEST(Run, GeometricEulerStaysOrthogonal) {
  const TrajectoryRecord rec = run(builtin_scenario("paper2022-geometric"));
  for (const TrajectoryRow& row : rec.rows) {
    ASSERT_LT((row.R.transpose() * row.R - Matrix3::Identity()).norm(), 1e-12);
    ASSERT_LT((row.Rhat.transpose() * row.Rhat - Matrix3::Identity()).norm(), 1e-12);
  }
}

double terminal_lyapunov(Integrator integ, double dt) {
  Scenario sc = builtin_scenario("paper2022");
  sc.integrator = integ;
  sc.dt = dt;
  sc.horizon = 5.0;
  return run(sc).rows.back().lyap;
}

TEST(Run, ConvergenceOrder) {
  // Successive differences shrink by about 10^p per 10x refinement.
  const double e1 = terminal_lyapunov(Integrator::euler, 1e-2);
  const double e2 = terminal_lyapunov(Integrator::euler, 1e-3);
  const double e3 = terminal_lyapunov(Integrator::euler, 1e-4);
  const double euler_ratio = std::abs(e1 - e2) / std::abs(e2 - e3);
  EXPECT_GT(euler_ratio, 5.0);
  EXPECT_LT(euler_ratio, 20.0);

  const double r1 = terminal_lyapunov(Integrator::rk4, 1e-1);
  const double r2 = terminal_lyapunov(Integrator::rk4, 1e-2);
  const double r3 = terminal_lyapunov(Integrator::rk4, 1e-3);
  EXPECT_GT(std::abs(r1 - r2) / std::abs(r2 - r3), 1e3);
}

TEST(Run, LoggedLyapunovMatchesOfflineRecomputation) {
  const TrajectoryRecord rec = run(builtin_scenario("paper2022"));
  std::istringstream in(to_csv(rec));
  const TrajectoryRecord back = read_trajectory_csv(in);
  ASSERT_EQ(back.rows.size(), rec.rows.size());
  for (const TrajectoryRow& row : back.rows) {
    EXPECT_NEAR(row.lyap, lyapunov(row_error_state(row), back.gains), 1e-12);
    EXPECT_NEAR(row.att_err, attitude_angle(row_error_state(row).R_E), 1e-12);
  }
}

TEST(Run, AbortNamesFirstBadRow) {
  Scenario sc = still_scenario(Integrator::euler, 0.1, 100.0);
  sc.gains = Gains::with_default_alpha(1e3, 1.0);  // k dt = 100: Euler blows up
  sc.obs0.vhat = Vector3(1, 0, 0);
  try {
    (void)run(sc);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("numerical abort at row"), std::string::npos) << what;
    EXPECT_NE(what.find("still"), std::string::npos) << what;
  }
}

TEST(MonteCarlo, ZeroPerturbationConverges) {
  MonteCarloOptions opt;
  opt.n = 1;
  opt.seed = 7;
  opt.zero_perturbation = true;
  const auto runs = monte_carlo(builtin_scenario("zero-error"), opt);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].verdict.basin, Basin::stable_identity);
}

TEST(MonteCarlo, SameSeedSameVerdicts) {
  Scenario base = builtin_scenario("paper2022-rk4");
  base.dt = 1e-2;
  base.horizon = 5.0;
  MonteCarloOptions opt;
  opt.n = 2;
  opt.seed = 42;
  const auto a = monte_carlo(base, opt);
  opt.workers = 1;
  const auto b = monte_carlo(base, opt);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].index, i);
    EXPECT_EQ(a[i].axis_index, b[i].axis_index);
    EXPECT_EQ(a[i].initial_attitude_error, b[i].initial_attitude_error);
    EXPECT_EQ(a[i].vhat0, b[i].vhat0);
    EXPECT_EQ(a[i].verdict.basin, b[i].verdict.basin);
    EXPECT_EQ(a[i].verdict.terminal_attitude_error, b[i].verdict.terminal_attitude_error);
  }
}

TEST(MonteCarlo, SamplingRanges) {
  const Scenario base = builtin_scenario("paper2022");
  MonteCarloOptions opt;
  opt.seed = 3;
  for (std::size_t i = 0; i < 200; ++i) {
    MonteCarloRun r;
    const Scenario sc = monte_carlo_scenario(base, opt, i, &r);
    EXPECT_GT(r.initial_attitude_error, 0.0);
    EXPECT_LE(r.initial_attitude_error, opt.max_initial_angle);
    EXPECT_LT(r.axis_index, 162u);
    EXPECT_LE(r.vhat0.cwiseAbs().maxCoeff(), opt.vhat_range);
    const ErrorState e = error_state(sc.x0, sc.obs0);
    EXPECT_NEAR(attitude_angle(e.R_E), r.initial_attitude_error, 1e-9);
  }
}

}  // namespace
}  // namespace vaa
