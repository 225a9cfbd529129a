#include "monopole/gauge.hpp"

#include <cmath>

#include "monopole/tolerances.hpp"

namespace monopole::gauge {

Vec3 dirac_gauge_potential(const Vec3& x) {
  const double r = x.norm();
  if (r < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "gauge potential at the origin");
  const double zr = x[2] + r;
  if (zr < kTol.chart_guard * r) {
    throw Error(ErrorKind::ChartSingularity, "Dirac string (negative z-axis)");
  }
  const double k = 1.0 / (2.0 * r * zr);
  return {x[1] * k, -x[0] * k, 0.0};
}

Vec3 dirac_curvature(const Vec3& x) {
  const double r = x.norm();
  if (r < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "curvature at the origin");
  const double k = 1.0 / (2.0 * r * r * r);
  return {-x[2] * k, x[1] * k, -x[0] * k};
}

Eigen::Matrix3d dirac_field_strength(const Vec3& x) {
  const Vec3 c = dirac_curvature(x);
  Eigen::Matrix3d f;
  f << 0.0, c[0], c[1],
      -c[0], 0.0, c[2],
      -c[1], -c[2], 0.0;
  return f;
}

Vec4 vertical_field_dirac(const Vec4& p) { return {-p[1], p[0], -p[3], p[2]}; }

double connection_theta_dirac(const Vec4& p, const Vec4& X) {
  const double n2 = p.squaredNorm();
  if (n2 < kTol.zero_vector * kTol.zero_vector) {
    throw Error(ErrorKind::ZeroVector, "connection at the origin");
  }
  return vertical_field_dirac(p).dot(X) / n2;
}

std::array<Vec8, 3> vertical_fields_su2(const Vec8& x) {
  Vec8 l1, l2, l3;
  l1 << -x[1], x[0], x[3], -x[2], -x[5], x[4], x[7], -x[6];
  l2 << -x[2], -x[3], x[0], x[1], -x[6], -x[7], x[4], x[5];
  l3 << -x[3], x[2], -x[1], x[0], -x[7], x[6], -x[5], x[4];
  return {l1, l2, l3};
}

Vec3 connection_theta_su2(const Vec8& p, const Vec8& X) {
  const double n2 = p.squaredNorm();
  if (n2 < kTol.zero_vector * kTol.zero_vector) {
    throw Error(ErrorKind::ZeroVector, "connection at the origin");
  }
  const auto l = vertical_fields_su2(p);
  return Vec3{l[0].dot(X), l[1].dot(X), l[2].dot(X)} / n2;
}

GaugeMatrixA gauge_matrix_a(const Vec4& u) {
  Eigen::Matrix<double, 3, 4> m;
  m << -u[1], u[0], u[3], -u[2],
       -u[2], -u[3], u[0], u[1],
       -u[3], u[2], -u[1], u[0];
  return GaugeMatrixA(m / (u.squaredNorm() + 1.0));
}

ChargeMatrixE charge_matrix_e(const Vec3& e) {
  Eigen::Matrix4d m;
  m << 0.0, e[0], e[1], e[2],
      -e[0], 0.0, -e[2], e[1],
      -e[1], e[2], 0.0, -e[0],
      -e[2], -e[1], e[0], 0.0;
  return ChargeMatrixE(m);
}

SpinMatrixB::SpinMatrixB(const Vec3& b) : b_(b) {
  m_ << 0.0, -b[2], b[1],
        b[2], 0.0, -b[0],
        -b[1], b[0], 0.0;
}

SpinMatrixB spin_matrix_b(const Vec4& u, const Vec4& u_dot) {
  return SpinMatrixB(gauge_matrix_a(u).apply(u_dot));
}

Vec3 yang_curvature(const Vec4& u, const Vec4& du1, const Vec4& du2) {
  using geom::Quaternion;
  const Quaternion a = Quaternion::from_vector(du1);
  const Quaternion b = Quaternion::from_vector(du2);
  const Quaternion f = a.conj() * b - b.conj() * a;
  const double d = u.squaredNorm() + 1.0;
  return f.imag() / (d * d);
}

Vec3 su2_bracket(const Vec3& a, const Vec3& b) { return 2.0 * a.cross(b); }

IdentityResiduals yang_identities_check(const Vec4& u, const Vec4& u_dot, const Vec3& e) {
  const double d = u.squaredNorm() + 1.0;
  const GaugeMatrixA a = gauge_matrix_a(u);
  const ChargeMatrixE big_e = charge_matrix_e(e);
  const Vec4 e_udot = big_e.apply(u_dot);
  const double a_udot_e = a.apply(u_dot).dot(e);

  IdentityResiduals out{};
  out.charge_projection = std::abs(u.dot(e_udot) - d * a_udot_e);

  const Eigen::RowVector4d eae = e.transpose() * a.matrix() * big_e.matrix();
  out.charge_transport = (eae.transpose() + e.squaredNorm() * u / d).norm();

  const Vec3 e_dot = -2.0 * spin_matrix_b(u, u_dot).apply(e);
  const double h = kTol.fd_step;
  const Eigen::Matrix4d e_dot_matrix =
      (charge_matrix_e(e + h * e_dot).matrix() - charge_matrix_e(e - h * e_dot).matrix()) / (2.0 * h);
  const Vec4 lhs = e_dot_matrix * u_dot;
  const Vec4 rhs = 2.0 *
                   (u_dot.squaredNorm() * big_e.apply(u) + u.dot(e_udot) * u_dot -
                    u.dot(u_dot) * e_udot) /
                   d;
  out.charge_derivative = (lhs - rhs).norm();
  return out;
}

}  // namespace monopole::gauge
