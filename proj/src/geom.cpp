#include "monopole/geom.hpp"

#include <cmath>

#include "monopole/tolerances.hpp"

namespace monopole {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DependentInput: return "DependentInput";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ChartSingularity: return "ChartSingularity";
    case ErrorKind::OutsideChart: return "OutsideChart";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::DegenerateApex: return "DegenerateApex";
    case ErrorKind::NotOnCone: return "NotOnCone";
    case ErrorKind::BadAperture: return "BadAperture";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::CollidingState: return "CollidingState";
    case ErrorKind::CollidingTrajectory: return "CollidingTrajectory";
    case ErrorKind::PoorFit: return "PoorFit";
    case ErrorKind::ZeroL: return "ZeroL";
    case ErrorKind::DegenerateCharge: return "DegenerateCharge";
    case ErrorKind::ApexReached: return "ApexReached";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace geom {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 < kTol.zero_vector * kTol.zero_vector) {
    throw Error(ErrorKind::ZeroVector, "inverse of a zero quaternion");
  }
  return (1.0 / n2) * conj();
}

bool Quaternion::is_complex(double tol) const {
  return std::abs(y_) <= tol && std::abs(z_) <= tol;
}

Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_,
          p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_,
          p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_,
          p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_};
}

Quaternion quaternion_multiply(const Quaternion& p, const Quaternion& q) { return p * q; }

namespace {

VecX residual_against(const VecX& v, std::span<const VecX> basis) {
  VecX w = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) w -= b.dot(w) * b;
  }
  return w;
}

}  // namespace

std::vector<VecX> orthonormalize(std::span<const VecX> vectors) {
  std::vector<VecX> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (!out.empty() && v.size() != out.front().size()) {
      throw Error(ErrorKind::BadInput, "orthonormalize: mixed dimensions");
    }
    const double input_norm = v.norm();
    VecX w = residual_against(v, out);
    const double rn = w.norm();
    if (input_norm < kTol.zero_vector || rn < kTol.dependent_input * input_norm) {
      throw Error(ErrorKind::DependentInput, "orthonormalize: vectors are linearly dependent");
    }
    out.push_back(w / rn);
  }
  return out;
}

std::vector<VecX> complete_orthonormal(std::span<const VecX> orthonormal, int n) {
  std::vector<VecX> all(orthonormal.begin(), orthonormal.end());
  std::vector<VecX> added;
  while (static_cast<int>(all.size()) < n) {
    VecX best;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      VecX r = residual_against(VecX::Unit(n, i), all);
      const double rn = r.norm();
      if (rn > best_norm) {
        best_norm = rn;
        best = std::move(r);
      }
    }
    best /= best_norm;
    all.push_back(best);
    added.push_back(std::move(best));
  }
  return added;
}

Rotation::Rotation(MatX m) : m_(std::move(m)) {
  const auto n = m_.rows();
  if (n != m_.cols() || n < 1) throw Error(ErrorKind::BadInput, "rotation must be square");
  if (!m_.allFinite()) throw Error(ErrorKind::BadInput, "rotation has non-finite entries");
  const double ortho = (m_.transpose() * m_ - MatX::Identity(n, n)).cwiseAbs().maxCoeff();
  if (ortho > kTol.rotation_check || std::abs(m_.determinant() - 1.0) > kTol.rotation_check) {
    throw Error(ErrorKind::BadInput, "matrix is not in SO(n)");
  }
}

Rotation Rotation::identity(int n) { return Rotation(MatX::Identity(n, n), Unchecked{}); }

Rotation Rotation::givens(int n, int i, int j, double c, double s) {
  MatX g = MatX::Identity(n, n);
  g(i, i) = c;
  g(i, j) = s;
  g(j, i) = -s;
  g(j, j) = c;
  return Rotation(std::move(g));
}

Rotation Rotation::inverse() const { return Rotation(m_.transpose(), Unchecked{}); }

Rotation Rotation::then(const Rotation& next) const {
  return Rotation(next.m_ * m_, Unchecked{});
}

Rotation rotation_mapping_to_axis(const VecX& v, int axis_index) {
  const int n = static_cast<int>(v.size());
  if (axis_index < 0 || axis_index >= n) {
    throw Error(ErrorKind::BadInput, "rotation_mapping_to_axis: axis out of range");
  }
  if (v.norm() < kTol.zero_vector) {
    throw Error(ErrorKind::ZeroVector, "rotation_mapping_to_axis: zero vector");
  }
  MatX r = MatX::Identity(n, n);
  VecX w = v;
  for (int i = 0; i < n; ++i) {
    if (i == axis_index || w[i] == 0.0) continue;
    const double h = std::hypot(w[axis_index], w[i]);
    const double c = w[axis_index] / h;
    const double s = w[i] / h;
    // Left-multiply by the Givens rotation on rows (axis, i).
    for (int col = 0; col < n; ++col) {
      const double a = r(axis_index, col);
      const double b = r(i, col);
      r(axis_index, col) = c * a + s * b;
      r(i, col) = -s * a + c * b;
    }
    w[axis_index] = h;
    w[i] = 0.0;
  }
  if (w[axis_index] < 0.0) {
    // Half-turn in the (axis, j) plane; no reflection.
    const int j = axis_index == 0 ? 1 : 0;
    r.row(axis_index) *= -1.0;
    r.row(j) *= -1.0;
  }
  return Rotation(std::move(r));
}

AffinePlane AffinePlane::through(const VecX& point, std::span<const VecX> directions) {
  auto basis = orthonormalize(directions);
  VecX offset = point;
  for (const auto& b : basis) offset -= b.dot(point) * b;
  // Second pass against round-off.
  for (const auto& b : basis) offset -= b.dot(offset) * b;
  return AffinePlane(std::move(offset), std::move(basis));
}

AffinePlane::AffinePlane(VecX offset, std::vector<VecX> orthonormal_basis)
    : offset_(std::move(offset)), basis_(std::move(orthonormal_basis)) {
  const auto n = offset_.size();
  if (!offset_.allFinite()) throw Error(ErrorKind::BadInput, "plane offset is not finite");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].size() != n) throw Error(ErrorKind::BadInput, "plane basis dimension mismatch");
    if (std::abs(basis_[i].dot(offset_)) > kTol.plane_check) {
      throw Error(ErrorKind::BadInput, "plane offset is not orthogonal to the basis");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(basis_[i].dot(basis_[j]) - expect) > kTol.plane_check) {
        throw Error(ErrorKind::BadInput, "plane basis is not orthonormal");
      }
    }
  }
}

VecX AffinePlane::project(const VecX& x) const {
  VecX p = offset_;
  const VecX d = x - offset_;
  for (const auto& b : basis_) p += b.dot(d) * b;
  return p;
}

double AffinePlane::distance(const VecX& x) const { return (x - project(x)).norm(); }

VecX Sphere::point(const VecX& coords) const {
  VecX p = center;
  for (int i = 0; i < plane.dim(); ++i) p += radius * coords[i] * plane.basis()[i];
  return p;
}

}  // namespace geom
}  // namespace monopole
