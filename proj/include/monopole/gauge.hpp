#pragma once

#include <array>

#include "monopole/geom.hpp"

// Connections, gauge potentials and curvatures of the extended Hopf bundles
// U(1) -> R⁴ -> R³ (Dirac) and SU(2) -> R⁸ -> R⁵ (Yang). Lie algebra
// elements are written in the basis {i} resp. {i, j, k}.
namespace monopole::gauge {

using geom::Vec3;
using geom::Vec4;
using geom::Vec8;

// ---- Dirac -----------------------------------------------------------------

/// Coefficients of A/i in (dx, dy, dz) over U₁: (y, -x, 0)/(2r(z+r)).
Vec3 dirac_gauge_potential(const Vec3& x);

/// Coefficients of F/i on (dx∧dy, dx∧dz, dy∧dz): (-z, y, -x)/(2r³).
Vec3 dirac_curvature(const Vec3& x);

/// Antisymmetric component matrix F_{μν} built from dirac_curvature.
Eigen::Matrix3d dirac_field_strength(const Vec3& x);

/// Fundamental vector field of the U(1) action at p ∈ R⁴.
Vec4 vertical_field_dirac(const Vec4& p);

/// θ/i evaluated on X at p.
double connection_theta_dirac(const Vec4& p, const Vec4& X);

// ---- Yang ------------------------------------------------------------------

/// L₁, L₂, L₃ at p ∈ R⁸ (right action of exp(t i), exp(t j), exp(t k)).
std::array<Vec8, 3> vertical_fields_su2(const Vec8& p);

/// θ(X) at p in the {i, j, k} basis.
Vec3 connection_theta_su2(const Vec8& p, const Vec8& X);

/// Gauge matrix: A = A du over U₂, rows A₁, A₂, A₃.
class GaugeMatrixA {
 public:
  explicit GaugeMatrixA(const Eigen::Matrix<double, 3, 4>& m) : m_(m) {}
  const Eigen::Matrix<double, 3, 4>& matrix() const { return m_; }
  Eigen::RowVector4d row(int i) const { return m_.row(i); }
  Vec3 apply(const Vec4& du) const { return m_ * du; }

 private:
  Eigen::Matrix<double, 3, 4> m_;
};

/// Antisymmetric 4×4 matrix E(e).
class ChargeMatrixE {
 public:
  explicit ChargeMatrixE(const Eigen::Matrix4d& m) : m_(m) {}
  const Eigen::Matrix4d& matrix() const { return m_; }
  Vec4 apply(const Vec4& v) const { return m_ * v; }

 private:
  Eigen::Matrix4d m_;
};

/// Antisymmetric 3×3 matrix B with B_i = A_i·u̇; B e = (B₁,B₂,B₃) × e.
class SpinMatrixB {
 public:
  explicit SpinMatrixB(const Vec3& b);
  const Eigen::Matrix3d& matrix() const { return m_; }
  const Vec3& axial() const { return b_; }
  Vec3 apply(const Vec3& e) const { return m_ * e; }

 private:
  Vec3 b_;
  Eigen::Matrix3d m_;
};

GaugeMatrixA gauge_matrix_a(const Vec4& u);
ChargeMatrixE charge_matrix_e(const Vec3& e);
SpinMatrixB spin_matrix_b(const Vec4& u, const Vec4& u_dot);

/// Curvature F_{μν} a^μ b^ν over U₂ in the {i, j, k} basis:
/// (ā b - b̄ a)/(|u|²+1)² with a, b read as quaternions.
Vec3 yang_curvature(const Vec4& u, const Vec4& du1, const Vec4& du2);

/// Lie bracket of su(2) ≅ Im H, [a, b] = ab - ba = 2 a×b.
Vec3 su2_bracket(const Vec3& a, const Vec3& b);

struct IdentityResiduals {
  double charge_projection;  // |u·Eu̇ - (|u|²+1) (Au̇·e)|
  double charge_transport;   // |eᵀAE + |e|² u/(|u|²+1)|
  double charge_derivative;  // |Ė u̇ - 2(|u̇|²Eu + (u·Eu̇)u̇ - (u·u̇)Eu̇)/(|u|²+1)|
};

/// Residuals of the auxiliary identities used to simplify α̇, α̈, α⃛.
/// Ė is differenced along e(t) = e + t ė with ė = -2Be.
IdentityResiduals yang_identities_check(const Vec4& u, const Vec4& u_dot, const Vec3& e);

}  // namespace monopole::gauge
