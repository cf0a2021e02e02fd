#include "vaa/lie_groups.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vaa {

Matrix3 skew(const Vector3& w) {
  Matrix3 s;
  // clang-format off
  s <<    0.0, -w.z(),  w.y(),
        w.z(),    0.0, -w.x(),
       -w.y(),  w.x(),    0.0;
  // clang-format on
  return s;
}

Vector3 unskew(const Matrix3& m) {
  const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-9)) {
    throw std::invalid_argument("unskew: matrix is not antisymmetric (|m + m^T| = " +
                                std::to_string(asym) + ")");
  }
  return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))};
}

Matrix3 project_so3(const Matrix3& m) { return 0.5 * (m - m.transpose()); }

Rotation Rotation::from_matrix(const Matrix3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("Rotation: non-finite entries");
  }
  const double orth = (m.transpose() * m - Matrix3::Identity()).norm();
  const double det = m.determinant();
  if (orth > kRotationTolerance || std::abs(det - 1.0) > kRotationTolerance) {
    throw std::invalid_argument("Rotation: matrix is not in SO(3) (|R^T R - I| = " +
                                std::to_string(orth) + ", det = " + std::to_string(det) + ")");
  }
  return Rotation(m, Unchecked{});
}

double Rotation::orthogonality_error() const {
  return (mat_.transpose() * mat_ - Matrix3::Identity()).norm();
}

Rotation exp_so3(const Vector3& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < 1e-8) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Matrix3 W = skew(w);
  return Rotation(Matrix3::Identity() + a * W + b * W * W, Rotation::Unchecked{});
}

double attitude_angle(const Rotation& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  return std::acos(c);
}

Rotation renormalize(const Matrix3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("renormalize: non-finite entries");
  }
  if (!(m.determinant() > 0.0)) {
    throw std::invalid_argument("renormalize: determinant is not positive");
  }
  // Newton iteration for the orthogonal polar factor, X <- (X + X^-T) / 2.
  // Quadratic convergence from any non-singular start with det > 0.
  Matrix3 x = m;
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix3 next = 0.5 * (x + x.inverse().transpose());
    const double change = (next - x).norm();
    x = next;
    if (change < 1e-15) {
      break;
    }
  }
  return Rotation(x, Rotation::Unchecked{});
}

Matrix4 GroupElement::homogeneous() const {
  Matrix4 h = Matrix4::Identity();
  h.topLeftCorner<3, 3>() = rot.matrix();
  h.topRightCorner<3, 1>() = vec;
  return h;
}

Matrix4 TangentElement::homogeneous() const {
  Matrix4 h = Matrix4::Zero();
  h.topLeftCorner<3, 3>() = skew(omega);
  h.topRightCorner<3, 1>() = u;
  return h;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return {a.rot * b.rot, a.rot * b.vec + a.vec};
}

GroupElement inverse(const GroupElement& a) {
  const Rotation rt = a.rot.inverse();
  return {rt, -(rt * a.vec)};
}

}  // namespace vaa
