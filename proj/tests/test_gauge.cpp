#include "support.hpp"

#include <numbers>

#include "monopole/gauge.hpp"
#include "monopole/oracles.hpp"

using namespace monopole;
using namespace monopole::gauge;
using geom::VecX;
using test_support::diff;
using test_support::error_kind;

namespace {

Vec3 off_string_point(test_support::Rng& rng) {
  for (;;) {
    const Vec3 x = rng.uniform(0.5, 2.0) * rng.unit_vector(3);
    if (x[2] + x.norm() > 0.2 * x.norm()) return x;
  }
}

}  // namespace

TEST_CASE("dirac potential and curvature") {
  CHECK(diff(dirac_gauge_potential(Vec3(0, 0, 1)), Vec3::Zero()) == 0.0);
  CHECK(diff(dirac_gauge_potential(Vec3(1, 0, 0)), Vec3(0, -0.5, 0)) < 1e-15);
  CHECK(diff(dirac_curvature(Vec3(0, 0, 1)), Vec3(-0.5, 0, 0)) < 1e-15);
  CHECK(diff(dirac_curvature(Vec3(0, 0, -1)), Vec3(0.5, 0, 0)) < 1e-15);
  CHECK(error_kind([] { dirac_gauge_potential(Vec3(0, 0, -1)); }) == ErrorKind::ChartSingularity);

  test_support::Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = off_string_point(rng);
    auto pot = [](const VecX& w) { return Eigen::MatrixXd(dirac_gauge_potential(Vec3(w)).transpose()); };
    const Eigen::MatrixXd d = oracles::exterior_derivative_fd(pot, x, 1e-5).front();
    const Eigen::Matrix3d f = dirac_field_strength(x);
    CHECK(diff(d, f) < 1e-6);
    const Vec3 c = dirac_curvature(x);
    CHECK(f(0, 1) == c[0]);
    CHECK(f(0, 2) == c[1]);
    CHECK(f(1, 2) == c[2]);
    CHECK(oracles::closedness_fd([](const VecX& w) { return Eigen::MatrixXd(dirac_field_strength(Vec3(w))); },
                                 x, 1e-4) < 1e-6);
  }
}

TEST_CASE("dirac potential is the pullback of the connection") {
  test_support::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = off_string_point(rng);
    const Eigen::MatrixXd a = oracles::pullback_fd(
        [](const VecX& w) { return oracles::dirac_section(w); },
        [](const VecX& p, const VecX& v) {
          VecX out(1);
          out[0] = connection_theta_dirac(geom::Vec4(p), geom::Vec4(v));
          return out;
        },
        x, 1e-5);
    CHECK(diff(a.row(0).transpose(), dirac_gauge_potential(x)) < 1e-6);
  }
}

TEST_CASE("connection_theta_dirac") {
  const Vec4 p(1, 0, 0, 0);
  CHECK(std::abs(connection_theta_dirac(p, Vec4(0, 1, 0, 0)) - 1.0) < 1e-15);
  CHECK(connection_theta_dirac(p, Vec4(1, 0, 0, 0)) == 0.0);
  CHECK(diff(vertical_field_dirac(p), Vec4(0, 1, 0, 0)) == 0.0);
  test_support::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec4 q = rng.normal_vector(4);
    CHECK(std::abs(connection_theta_dirac(q, vertical_field_dirac(q)) - 1.0) < 1e-12);
  }
}

TEST_CASE("vertical_fields_su2 and connection_theta_su2") {
  Vec8 e1 = Vec8::Zero();
  e1[0] = 1.0;
  const auto l = vertical_fields_su2(e1);
  for (int i = 0; i < 3; ++i) CHECK(diff(l[i], Vec8::Unit(i + 1)) == 0.0);

  test_support::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec8 p = rng.normal_vector(8);
    const auto ls = vertical_fields_su2(p);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(ls[i].dot(p)) < 1e-10);
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(ls[i].dot(ls[j]) - (i == j ? p.squaredNorm() : 0.0)) < 1e-10);
      }
      CHECK(diff(connection_theta_su2(p, ls[i]), Vec3::Unit(i)) < 1e-12);
    }
    CHECK(diff(connection_theta_su2(p, p), Vec3::Zero()) < 1e-12);
    Vec8 x = rng.normal_vector(8);
    for (const auto& li : ls) x -= li.dot(x) / li.squaredNorm() * li;
    CHECK(diff(connection_theta_su2(p, x), Vec3::Zero()) < 1e-10);
  }
}

TEST_CASE("gauge_matrix_a") {
  CHECK(diff(gauge_matrix_a(Vec4::Zero()).matrix(), Eigen::MatrixXd::Zero(3, 4)) == 0.0);
  Eigen::Matrix<double, 3, 4> expected;
  expected << 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  CHECK(diff(gauge_matrix_a(Vec4(1, 0, 0, 0)).matrix(), 0.5 * expected) < 1e-15);

  test_support::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    VecX u = rng.normal_vector(4);
    const double r = rng.uniform(0.5, 2.0);
    const Eigen::MatrixXd pulled = oracles::pullback_fd(
        [r](const VecX& w) { return oracles::yang_section(w, r); },
        [](const VecX& p, const VecX& v) { return VecX(connection_theta_su2(Vec8(p), Vec8(v))); }, u, 1e-5);
    CHECK(diff(pulled, gauge_matrix_a(u).matrix()) < 1e-6);
  }
}

TEST_CASE("yang_curvature") {
  const Vec4 a(0.3, -1.0, 0.2, 0.5);
  CHECK(diff(yang_curvature(Vec4(0.1, 0.2, 0.3, 0.4), a, a), Vec3::Zero()) == 0.0);

  // Quaternion oracle: Im(conj(e1) e2 - conj(e2) e1) with e1 = 1, e2 = i.
  const Eigen::Vector4d c1(1, 0, 0, 0), c2(0, -1, 0, 0);
  const Eigen::Vector4d ref =
      oracles::quaternion_product(c1, Vec4::Unit(1)) - oracles::quaternion_product(c2, Vec4::Unit(0));
  CHECK(diff(yang_curvature(Vec4::Zero(), Vec4::Unit(0), Vec4::Unit(1)), Vec3(ref.tail<3>())) < 1e-15);
  CHECK(diff(yang_curvature(Vec4::Zero(), Vec4::Unit(0), Vec4::Unit(1)), Vec3(2, 0, 0)) < 1e-15);

  test_support::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vec4 u = rng.normal_vector(4);
    const Vec4 x = rng.normal_vector(4);
    const Vec4 y = rng.normal_vector(4);
    auto pot = [](const VecX& w) { return Eigen::MatrixXd(gauge_matrix_a(Vec4(w)).matrix()); };
    CHECK(diff(yang_curvature(u, x, y), oracles::structure_curvature_fd(pot, u, x, y, 1e-5)) < 1e-6);
    CHECK(diff(yang_curvature(u, x, y), -yang_curvature(u, y, x)) < 1e-14);
  }
  CHECK(diff(su2_bracket(Vec3(1, 0, 0), Vec3(0, 1, 0)), Vec3(0, 0, 2)) == 0.0);
}

TEST_CASE("charge and spin matrices") {
  Eigen::Matrix4d expected;
  expected << 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  CHECK(diff(charge_matrix_e(Vec3(1, 0, 0)).matrix(), expected) == 0.0);
  CHECK(diff(charge_matrix_e(Vec3::Zero()).matrix(), Eigen::Matrix4d::Zero()) == 0.0);

  test_support::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Vec3 e = rng.normal_vector(3);
    const Vec4 u = rng.normal_vector(4);
    const Vec4 ud = rng.normal_vector(4);
    const auto em = charge_matrix_e(e);
    CHECK(diff(em.matrix(), Eigen::Matrix4d(-em.matrix().transpose())) == 0.0);
    CHECK(std::abs(ud.dot(em.apply(ud))) < 1e-12);
    const auto b = spin_matrix_b(u, ud);
    CHECK(diff(b.axial(), gauge_matrix_a(u).apply(ud)) < 1e-14);
    CHECK(diff(b.apply(e), b.axial().cross(e)) < 1e-14);
    CHECK(std::abs(e.dot(b.apply(e))) < 1e-12);
  }
}

TEST_CASE("yang_identities_check") {
  const auto z = yang_identities_check(Vec4::Zero(), Vec4(0.3, 1.0, -2.0, 0.5), Vec3(1.0, -0.5, 2.0));
  CHECK(z.charge_projection == 0.0);

  test_support::Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    VecX u(4);
    for (int j = 0; j < 4; ++j) u[j] = rng.uniform(-1.0, 1.0);
    const auto r = yang_identities_check(u, rng.normal_vector(4), rng.normal_vector(3));
    CHECK(r.charge_projection < 1e-10);
    CHECK(r.charge_transport < 1e-10);
    CHECK(r.charge_derivative < 1e-6);
  }
}
