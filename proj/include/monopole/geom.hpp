#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "monopole/error.hpp"

namespace monopole::geom {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;
using Vec5 = Vec<5>;
using Vec8 = Vec<8>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Componentwise comparison; vectors are never compared bitwise.
template <class A, class B>
bool approx_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

template <class A>
bool all_finite(const Eigen::MatrixBase<A>& a) {
  return a.allFinite();
}

/// Hamilton quaternion w + x i + y j + z k with i·j = k.
class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}

  static Quaternion from_vector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  static Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }
  static constexpr Quaternion complex(double re, double im) { return {re, im, 0.0, 0.0}; }

  constexpr double w() const { return w_; }
  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }

  Vec4 vector() const { return {w_, x_, y_, z_}; }
  Vec3 imag() const { return {x_, y_, z_}; }

  constexpr Quaternion conj() const { return {w_, -x_, -y_, -z_}; }
  constexpr double norm2() const { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }
  double norm() const;
  Quaternion inverse() const;
  bool is_complex(double tol = 0.0) const;

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q);
  friend constexpr Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.w_ + q.w_, p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_};
  }
  friend constexpr Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.w_ - q.w_, p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w_, s * q.x_, s * q.y_, s * q.z_};
  }

 private:
  double w_ = 0.0, x_ = 0.0, y_ = 0.0, z_ = 0.0;
};

Quaternion quaternion_multiply(const Quaternion& p, const Quaternion& q);

/// Gram-Schmidt (two passes). Throws DependentInput if a vector is
/// numerically in the span of its predecessors.
std::vector<VecX> orthonormalize(std::span<const VecX> vectors);

/// Deterministic completion of an orthonormal family to a basis of R^n:
/// greedily appends the standard basis vector with the largest residual.
std::vector<VecX> complete_orthonormal(std::span<const VecX> orthonormal, int n);

/// Element of SO(n).
class Rotation {
 public:
  explicit Rotation(MatX m);  // validated
  static Rotation identity(int n);
  /// Plane rotation on coordinates (i, j): (x_i, x_j) -> (c x_i + s x_j, c x_j - s x_i).
  static Rotation givens(int n, int i, int j, double c, double s);

  int dim() const { return static_cast<int>(m_.rows()); }
  const MatX& matrix() const { return m_; }
  VecX apply(const VecX& v) const { return m_ * v; }
  Rotation inverse() const;
  Rotation then(const Rotation& next) const;  // next ∘ this

 private:
  struct Unchecked {};
  Rotation(MatX m, Unchecked) : m_(std::move(m)) {}
  MatX m_;
};

/// R ∈ SO(n) with R·v = |v|·e_axis, built from Givens rotations applied in
/// increasing index order. axis_index is 0-based.
Rotation rotation_mapping_to_axis(const VecX& v, int axis_index);

/// Plane a + span(basis) with a ⟂ span and an orthonormal basis.
class AffinePlane {
 public:
  /// Plane through `point` with the given (not necessarily orthonormal) directions.
  static AffinePlane through(const VecX& point, std::span<const VecX> directions);
  /// Trusts the caller for orthonormality but validates the invariants.
  AffinePlane(VecX offset, std::vector<VecX> orthonormal_basis);

  int ambient_dim() const { return static_cast<int>(offset_.size()); }
  int dim() const { return static_cast<int>(basis_.size()); }
  const VecX& offset() const { return offset_; }
  const std::vector<VecX>& basis() const { return basis_; }

  VecX project(const VecX& x) const;
  double distance(const VecX& x) const;

 private:
  VecX offset_;
  std::vector<VecX> basis_;
};

struct Sphere {
  VecX center;
  double radius;
  AffinePlane plane;

  /// Point at unit direction `coords` (length plane.dim()) in the plane's basis.
  VecX point(const VecX& coords) const;
};

}  // namespace monopole::geom
