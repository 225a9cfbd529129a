#pragma once

#include <optional>
#include <span>
#include <vector>

#include "monopole/geom.hpp"

// k-dimensional cones in Rⁿ with vertex at the origin: the set of x ≠ 0 with
// x/|x| in an affine k-plane P = a + U, a ⟂ U, |a| < 1.
namespace monopole::cones {

using geom::AffinePlane;
using geom::Rotation;
using geom::Vec3;
using geom::VecX;

class Cone {
 public:
  /// Throws NoIntersection unless |a| < 1 - 1e-12.
  static Cone from_plane(AffinePlane plane);

  int ambient_dim() const { return plane_.ambient_dim(); }
  int dim() const { return plane_.dim(); }
  const AffinePlane& plane() const { return plane_; }

  /// ψ ∈ (0, π/2] with cos ψ = |a|.
  double aperture() const { return aperture_; }
  double cos_aperture() const { return plane_.offset().norm(); }
  /// a = 0: the cone is a punctured k-plane and has no preferred direction.
  bool is_flat() const;

  /// Unit direction, only for k = n-1. A flat hypercone returns its unit normal.
  std::optional<VecX> direction() const;

  /// Distance from x/|x| to P.
  double membership_residual(const VecX& x) const;
  bool contains(const VecX& x, double tol) const;
  bool contains(const VecX& x) const;

  /// radius · (point of P ∩ S^{n-1} with unit coordinates `coords` in the basis of U).
  VecX point(const VecX& coords, double radius) const;

 private:
  Cone(AffinePlane plane, double aperture) : plane_(std::move(plane)), aperture_(aperture) {}
  AffinePlane plane_;
  double aperture_;
};

/// (n-1)-cone {x : x·L/(|x||L|) = cos ψ}. Errors: ZeroVector, BadAperture.
Cone cone_from_direction(const VecX& direction, double psi);

/// P ∩ S^{n-1}: center a, radius √(1-|a|²). Errors: NoIntersection.
geom::Sphere plane_sphere_intersection(const AffinePlane& plane);

struct Canonical {
  Rotation rotation;
  double psi;
};

/// Rotation R with R(C) = {(y, 0) : y ∈ D ⊂ R^{k+1}}, D the standard k-cone
/// of aperture ψ along e_{k+1}. Built by Givens QR of [u₁ … u_k, a/|a|].
Canonical canonicalize_cone(const Cone& cone);

/// Unique (n-1)-cone of the same aperture containing D: P = a + (span a)⊥.
/// Errors: DegenerateApex when a = 0.
Cone unique_embedding(const Cone& cone);

/// Chart of the standard n-cone of aperture ψ in R^{n+1}, v ∈ R^{n-1}:
/// φ(v, r) = (2v r sinψ/(|v|²+1), (|v|²-1) r sinψ/(|v|²+1), r cosψ).
VecX cone_param(double psi, const VecX& v, double r);

struct ConeChartPoint {
  VecX v;
  double r;
};

/// Errors: NotOnCone (relative residual > 1e-8), ChartSingularity, ZeroVector.
ConeChartPoint cone_param_inverse(double psi, const VecX& x);

/// Γ^k_ij of the metric 4r² sin²ψ/(|v|²+1)² dv² + dr² in coordinates
/// (v₁ … v_{n-1}, r); the last index is r.
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}
  int dim() const { return dim_; }
  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  /// Γ^k_ij a^i b^j.
  VecX contract(const VecX& a, const VecX& b) const;

 private:
  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
  int dim_;
  std::vector<double> data_;
};

Christoffel cone_christoffel(const VecX& v, double r, double psi);

/// Metric coefficient g_vv = 4r² sin²ψ/(|v|²+1)² (g_rr = 1).
double cone_metric_conformal(const VecX& v, double r, double psi);

struct ConeState {
  VecX v;
  double r;
  VecX v_dot;
  double r_dot;
};

struct ConeAcceleration {
  VecX v_ddot;
  double r_ddot;
};

ConeAcceleration cone_geodesic_rhs(const ConeState& s, double psi);

/// Packed (v, r, v̇, ṙ) ↔ ConeState for the integrator.
VecX pack(const ConeState& s);
ConeState unpack_cone_state(const VecX& y);
/// d/dt of the packed state.
VecX cone_geodesic_field(const VecX& y, double psi);

/// g(ẋ, ẋ) in the cone chart.
double cone_speed2(const ConeState& s, double psi);

/// Straight line of the unrolled cone: closest approach r₀ at t = 0,
/// speed v₀, on the standard ψ-cone along (0,0,1).
class AnalyticConeGeodesic {
 public:
  AnalyticConeGeodesic(double r0, double v0, double psi);  // BadInput
  Vec3 position(double t) const;
  double r0() const { return r0_; }
  double v0() const { return v0_; }
  double psi() const { return psi_; }

 private:
  double r0_, v0_, psi_;
};

struct TwoConeFit {
  Cone cone;
  double residual;
  VecX singular_values;
};

/// Least-squares 2-plane through the radial projections x/|x|.
/// Errors: BadInput (< 10 samples), CollidingTrajectory (rank < 2).
TwoConeFit fit_two_cone(std::span<const VecX> samples);

/// fit_two_cone plus PoorFit when the residual exceeds 1e-6.
TwoConeFit reduce_to_two_cone(std::span<const VecX> samples);

/// Sup over interior samples of |(v̈, r̈) - cone_geodesic_rhs| for a curve
/// sampled at spacing dt on an (n-1)-cone, after canonicalization and a
/// rotation that keeps the curve away from the chart's excluded ray.
/// Derivatives come from five-point stencils with offset `stride` samples.
double cone_geodesic_residual(const Cone& cone, std::span<const VecX> samples, double dt, int stride);

/// Five-point central differences at spacing h; T is double or an Eigen vector.
template <class T>
T stencil_d1(const T& fm2, const T& fm1, const T& fp1, const T& fp2, double h) {
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

template <class T>
T stencil_d2(const T& fm2, const T& fm1, const T& f0, const T& fp1, const T& fp2, double h) {
  return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

template <class T>
T stencil_d3(const T& fm2, const T& fm1, const T& fp1, const T& fp2, double h) {
  return (-fm2 + 2.0 * fm1 - 2.0 * fp1 + fp2) / (2.0 * h * h * h);
}

}  // namespace monopole::cones
