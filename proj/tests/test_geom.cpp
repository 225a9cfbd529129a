#include "support.hpp"

#include "monopole/geom.hpp"

using namespace monopole;
using namespace monopole::geom;
using test_support::diff;
using test_support::error_kind;

TEST_CASE("orthonormalize") {
  SUBCASE("axis aligned") {
    const VecX in[] = {Vec3(1, 0, 0), Vec3(1, 1, 0)};
    const auto q = orthonormalize(in);
    REQUIRE(q.size() == 2);
    CHECK(diff(q[0], Vec3(1, 0, 0)) < 1e-15);
    CHECK(diff(q[1], Vec3(0, 1, 0)) < 1e-15);
  }
  SUBCASE("normalization") {
    const VecX in[] = {Vec3(2, 0, 0)};
    CHECK(diff(orthonormalize(in)[0], Vec3(1, 0, 0)) < 1e-15);
  }
  SUBCASE("random vectors in R5") {
    test_support::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const VecX in[] = {rng.normal_vector(5), rng.normal_vector(5), rng.normal_vector(5)};
      const auto q = orthonormalize(in);
      MatX m(5, 3);
      for (int i = 0; i < 3; ++i) m.col(i) = q[i];
      CHECK(diff(m.transpose() * m, MatX::Identity(3, 3)) < 1e-12);
    }
  }
  SUBCASE("dependent input") {
    const VecX in[] = {Vec3(1, 2, 3), Vec3(2, 4, 6)};
    CHECK(error_kind([&] { orthonormalize(in); }) == ErrorKind::DependentInput);
  }
}

TEST_CASE("complete_orthonormal spans the space") {
  const VecX in[] = {Vec4(1, 1, 0, 0) / std::sqrt(2.0)};
  const auto extra = complete_orthonormal(in, 4);
  REQUIRE(extra.size() == 3);
  MatX m(4, 4);
  m.col(0) = in[0];
  for (int i = 0; i < 3; ++i) m.col(i + 1) = extra[i];
  CHECK(diff(m.transpose() * m, MatX::Identity(4, 4)) < 1e-12);
}

TEST_CASE("quaternion_multiply") {
  const Quaternion i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1), one(1, 0, 0, 0);
  CHECK(diff(quaternion_multiply(i, j).vector(), k.vector()) == 0.0);
  CHECK(diff(quaternion_multiply(j, i).vector(), (-1.0 * k).vector()) == 0.0);
  const Quaternion q(0.3, -1.2, 2.0, 0.7);
  CHECK(diff(quaternion_multiply(q, one).vector(), q.vector()) == 0.0);
  CHECK(diff((q * q.inverse()).vector(), one.vector()) < 1e-15);

  test_support::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = Quaternion::from_vector(rng.normal_vector(4));
    const auto r = Quaternion::from_vector(rng.normal_vector(4));
    CHECK(std::abs(quaternion_multiply(p, r).norm() - p.norm() * r.norm()) < 1e-12);
  }
}

TEST_CASE("rotation_mapping_to_axis") {
  SUBCASE("already on axis") {
    const Rotation r = rotation_mapping_to_axis(Vec3(0, 0, 5), 2);
    CHECK(diff(r.matrix(), MatX::Identity(3, 3)) == 0.0);
  }
  SUBCASE("x to z") {
    const Rotation r = rotation_mapping_to_axis(Vec3(1, 0, 0), 2);
    CHECK(diff(r.apply(Vec3(1, 0, 0)), Vec3(0, 0, 1)) < 1e-12);
  }
  SUBCASE("opposite direction") {
    const Rotation r = rotation_mapping_to_axis(Vec3(0, 0, -2), 2);
    CHECK(diff(r.apply(Vec3(0, 0, -2)), Vec3(0, 0, 2)) < 1e-12);
  }
  SUBCASE("random in R5") {
    test_support::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const VecX v = rng.normal_vector(5);
      const int axis = trial % 5;
      const Rotation r = rotation_mapping_to_axis(v, axis);
      CHECK(diff(r.matrix().transpose() * r.matrix(), MatX::Identity(5, 5)) < 1e-12);
      CHECK(std::abs(r.matrix().determinant() - 1.0) < 1e-12);
      CHECK(diff(r.apply(v), v.norm() * VecX::Unit(5, axis)) < 1e-12);
    }
  }
  SUBCASE("zero vector") {
    CHECK(error_kind([] { rotation_mapping_to_axis(Vec3::Zero(), 0); }) == ErrorKind::ZeroVector);
  }
}

TEST_CASE("Rotation validation") {
  MatX reflect = MatX::Identity(3, 3);
  reflect(0, 0) = -1.0;
  CHECK_THROWS_AS(Rotation{reflect}, Error);
  const Rotation g = Rotation::givens(3, 0, 1, 0.0, 1.0);
  CHECK(diff(g.apply(Vec3(0, 1, 0)), Vec3(1, 0, 0)) < 1e-15);
  CHECK(diff(g.apply(Vec3(1, 0, 0)), Vec3(0, -1, 0)) < 1e-15);
  CHECK(diff(g.then(g.inverse()).matrix(), MatX::Identity(3, 3)) < 1e-15);
}

TEST_CASE("AffinePlane") {
  const VecX dirs[] = {Vec3(1, 0, 0), Vec3(1, 1, 0)};
  const AffinePlane p = AffinePlane::through(Vec3(3, -2, 0.5), dirs);
  CHECK(p.dim() == 2);
  CHECK(diff(p.offset(), Vec3(0, 0, 0.5)) < 1e-15);
  CHECK(std::abs(p.distance(Vec3(7, 7, 2.5)) - 2.0) < 1e-15);
  CHECK(diff(p.project(Vec3(7, 7, 2.5)), Vec3(7, 7, 0.5)) < 1e-15);
  CHECK_THROWS_AS(AffinePlane(Vec3(1, 0, 0), {Vec3(1, 0, 0)}), Error);
}
