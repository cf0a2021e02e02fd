#include "vaa/vehicle_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "vaa/integrators.hpp"

namespace vaa {
namespace {

using testing::Sampler;

TEST(SystemDerivative, FreeFall) {
  const SystemState s{Rotation::identity(), Vector3::Zero()};
  const SystemTangent d = system_derivative(s, ImuSample{}, {0, 0, 9.81});
  EXPECT_EQ(d.dR, Matrix3::Zero());
  EXPECT_EQ(d.dv, Vector3(0, 0, 9.81));
}

TEST(SystemDerivative, PureRotation) {
  const SystemState s{Rotation::identity(), Vector3::Zero()};
  const SystemTangent d = system_derivative(s, ImuSample{0.0, {0, 0, 1}, Vector3::Zero()}, Vector3::Zero());
  EXPECT_EQ(d.dR, skew({0, 0, 1}));
  EXPECT_EQ(d.dv, Vector3::Zero());
}

TEST(SystemDerivative, PaperScenarioHoversAtStart) {
  const ScenarioSignals paper = paper_scenario();
  const SystemTangent d =
      system_derivative(paper.initial, paper.inputs.sample(0.0), paper.inputs.gravity);
  EXPECT_EQ(d.dv, Vector3::Zero());
  EXPECT_EQ(d.dR, skew({0, 0, 1}));
}

TEST(Measure, ReturnsVelocity) {
  EXPECT_EQ(measure(SystemState{Rotation::identity(), {1, 2, 3}}), Vector3(1, 2, 3));
  EXPECT_EQ(measure(SystemState{exp_so3({0.1, 0.2, 0.3}), Vector3::Zero()}), Vector3::Zero());
}

TEST(Measure, AfterOneEulerFreeFallStep) {
  SystemState s{Rotation::identity(), Vector3::Zero()};
  const Vector3 g(0, 0, 9.81);
  const SystemTangent d = system_derivative(s, ImuSample{}, g);
  s.v += 0.1 * d.dv;
  EXPECT_LT((measure(s) - Vector3(0, 0, 0.981)).norm(), 1e-15);
}

TEST(LiftedDerivative, ZeroInputsAtIdentity) {
  EXPECT_EQ(lifted_derivative(GroupElement::identity(), {}, {}), Matrix4::Zero());
}

TEST(LiftedDerivative, IdentityBlocks) {
  const Vector3 omega(0.3, -0.1, 1.0);
  const Vector3 a(1.0, 2.0, -9.0);
  const Vector3 g(0.0, 0.0, 9.81);
  const Matrix4 d = lifted_derivative(GroupElement::identity(), {omega, a}, {Vector3::Zero(), g});
  EXPECT_LT((d.topLeftCorner<3, 3>() - skew(omega)).norm(), 1e-15);
  EXPECT_LT((d.topRightCorner<3, 1>() - (a + g)).norm(), 1e-15);
  EXPECT_EQ(d.bottomRows<1>(), Eigen::RowVector4d::Zero());
}

TEST(LiftedDerivative, AgreesWithSystemDerivativeBlockwise) {
  Sampler rng(21);
  for (int i = 0; i < 100; ++i) {
    const SystemState s{rng.rotation(), rng.vector(3.0)};
    const ImuSample u{0.0, rng.vector(), rng.vector(5.0)};
    const Vector3 g = rng.vector(5.0);
    const SystemTangent d = system_derivative(s, u, g);
    const Matrix4 lifted =
        lifted_derivative(GroupElement{s.R, s.v}, {u.omega, u.accel}, {Vector3::Zero(), g});
    EXPECT_LT((lifted.topLeftCorner<3, 3>() - d.dR).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((lifted.topRightCorner<3, 1>() - d.dv).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(PaperScenario, Signals) {
  const ScenarioSignals paper = paper_scenario();
  EXPECT_EQ(paper.inputs.omega(7.3), Vector3(0, 0, 1));
  EXPECT_EQ(paper.inputs.accel(0.0), Vector3(0, 0, -9.81));
  EXPECT_LT((paper.inputs.accel(std::numbers::pi / 10) - Vector3(5, 0, -9.81)).norm(), 1e-14);
  EXPECT_EQ(paper.inputs.gravity, Vector3(0, 0, 9.81));
  EXPECT_EQ(paper.initial.R.matrix(), Matrix3::Identity());
  EXPECT_EQ(paper.initial.v, Vector3::Zero());
}

TEST(SinusoidSignal, ComponentWise) {
  SinusoidSignal s;
  s.offset = {1, 2, 3};
  s.amplitude = {1, 0, 2};
  s.frequency = {2, 0, 1};
  s.phase = {0, 0, std::numbers::pi / 2};
  const Vector3 v = s(0.3);
  EXPECT_NEAR(v[0], 1 + std::sin(0.6), 1e-15);
  EXPECT_EQ(v[1], 2.0);
  EXPECT_NEAR(v[2], 3 + 2 * std::cos(0.3), 1e-15);
}

TEST(Kinematics, GeometricSteppingStaysOnSo3) {
  const ScenarioSignals paper = paper_scenario();
  Rotation R = paper.initial.R;
  const double dt = 1e-3;
  for (int i = 0; i < 10000; ++i) {
    R = R * exp_so3(dt * paper.inputs.omega(i * dt));
  }
  EXPECT_LT(R.orthogonality_error(), 1e-9);
  // Constant yaw rate: the closed form is a rotation by t about z.
  EXPECT_LT((R.matrix() - exp_so3({0, 0, 10.0}).matrix()).norm(), 1e-9);
}

TEST(Kinematics, FreeFallIsExactUnderRk4) {
  const SystemState s0{Rotation::identity(), {0.5, -1.0, 2.0}};
  const Vector3 g(0, 0, 9.81);
  const auto field = [&](double, const Vector3& v) -> Vector3 {
    return system_derivative(SystemState{s0.R, v}, ImuSample{}, g).dv;
  };
  Vector3 v = s0.v;
  const double dt = 0.01;
  for (int i = 0; i < 1000; ++i) v = rk4_step(v, i * dt, dt, field);
  EXPECT_LT((v - (s0.v + g * 10.0)).norm(), 1e-10);
}

}  // namespace
}  // namespace vaa
