#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vaa {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;

/// Tolerance for the orthonormality / determinant invariants of Rotation.
inline constexpr double kRotationTolerance = 1e-9;

/// Antisymmetric matrix w^x such that skew(w) * v == w.cross(v).
[[nodiscard]] Matrix3 skew(const Vector3& w);

/// Inverse of skew. Throws std::invalid_argument if m is not antisymmetric
/// within 1e-9 (max-abs of m + m^T).
[[nodiscard]] Vector3 unskew(const Matrix3& m);

/// Projection onto so(3): (m - m^T) / 2.
[[nodiscard]] Matrix3 project_so3(const Matrix3& m);

/**
 * @brief Element of SO(3) stored as a full 3x3 matrix.
 *
 * Construction through from_matrix() validates R^T R = I and det R = 1 to
 * kRotationTolerance. Products and inverses of valid rotations are formed
 * without re-validation.
 */
class Rotation {
 public:
  Rotation() : mat_(Matrix3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  /// Throws std::invalid_argument if m violates the SO(3) invariants.
  static Rotation from_matrix(const Matrix3& m);

  [[nodiscard]] const Matrix3& matrix() const { return mat_; }
  [[nodiscard]] Rotation inverse() const { return Rotation(mat_.transpose(), Unchecked{}); }
  [[nodiscard]] double trace() const { return mat_.trace(); }

  Rotation operator*(const Rotation& other) const {
    return Rotation(mat_ * other.mat_, Unchecked{});
  }
  Vector3 operator*(const Vector3& v) const { return mat_ * v; }

  /// Frobenius norm of R^T R - I.
  [[nodiscard]] double orthogonality_error() const;

 private:
  struct Unchecked {};
  Rotation(const Matrix3& m, Unchecked) : mat_(m) {}

  friend Rotation exp_so3(const Vector3& w);
  friend Rotation renormalize(const Matrix3& m);

  Matrix3 mat_;
};

/// Rodrigues exponential; Taylor-expanded coefficients below |w| = 1e-8.
[[nodiscard]] Rotation exp_so3(const Vector3& w);

/// Rotation angle arccos((tr R - 1) / 2) in [0, pi].
[[nodiscard]] double attitude_angle(const Rotation& r);

/**
 * @brief Nearest rotation to m (orthogonal polar factor).
 *
 * Intended for matrices that drifted slightly off SO(3) during integration.
 * Throws std::invalid_argument if det(m) <= 0 or m is not finite.
 */
[[nodiscard]] Rotation renormalize(const Matrix3& m);

/// Element (R, v) of the SE(3)-shaped symmetry group, homogeneous semantics.
struct GroupElement {
  Rotation rot;
  Vector3 vec = Vector3::Zero();

  static GroupElement identity() { return {}; }
  [[nodiscard]] Matrix4 homogeneous() const;
};

/// Element (Omega, u) of se(3).
struct TangentElement {
  Vector3 omega = Vector3::Zero();
  Vector3 u = Vector3::Zero();

  [[nodiscard]] Matrix4 homogeneous() const;
};

[[nodiscard]] GroupElement compose(const GroupElement& a, const GroupElement& b);
[[nodiscard]] GroupElement inverse(const GroupElement& a);

}  // namespace vaa
