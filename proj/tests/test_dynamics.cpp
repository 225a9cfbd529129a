#include "support.hpp"

#include <numbers>

#include "monopole/charts.hpp"
#include "monopole/dynamics.hpp"

using namespace monopole;
using namespace monopole::dynamics;
using geom::VecX;
using test_support::diff;
using test_support::error_kind;

namespace {

constexpr double kPi = std::numbers::pi;

const DiracState kExample{Vec3(1, 0, 0), Vec3(0, 1, 0), 2.0};

YangState random_yang(test_support::Rng& rng) { return verify::sample_yang_state(rng); }

}  // namespace

TEST_CASE("dirac_rhs") {
  CHECK(diff(dirac_rhs(kExample), Vec3(0, 0, 2)) == 0.0);
  CHECK(diff(dirac_rhs({Vec3(1, 2, 3), Vec3(-1, 0, 4), 0.0}), Vec3::Zero()) == 0.0);
  test_support::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const DiracState s = verify::sample_dirac_state(rng);
    CHECK(std::abs(dirac_rhs(s).dot(s.r_dot)) < 1e-12);
  }
  CHECK(error_kind([] { dirac_rhs({Vec3::Zero(), Vec3(1, 0, 0), 1.0}); }) == ErrorKind::ApexReached);
}

TEST_CASE("dirac_conserved_l and dirac_cone") {
  CHECK(diff(dirac_conserved_l(kExample), Vec3(2, 0, 1)) < 1e-15);
  const DiracState radial{Vec3(1, 1, 0), Vec3(2, 2, 0), 0.0};
  CHECK(dirac_conserved_l(radial).norm() == 0.0);
  CHECK(dirac_is_colliding(radial));
  CHECK(error_kind([&] { dirac_cone(radial); }) == ErrorKind::CollidingState);

  const cones::Cone c = dirac_cone(kExample);
  CHECK(diff(*c.direction(), Vec3(2, 0, 1) / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(c.cos_aperture() - 2.0 / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(dirac_perpendicular_aperture(1.0, 1.0, 2.0) - std::atan(0.5)) < 1e-15);
  CHECK(std::abs(std::cos(std::atan(0.5)) - 2.0 / std::sqrt(5.0)) < 1e-15);
  CHECK(c.contains(kExample.r));

  const cones::Cone flat = dirac_cone({Vec3(1, 0, 0), Vec3(0, 1, 0), 0.0});
  CHECK(std::abs(flat.aperture() - kPi / 2) < 1e-15);

  // Negative coupling: the cone lies along -L.
  const DiracState neg{Vec3(1, 0, 0), Vec3(0, 1, 0), -2.0};
  const cones::Cone cn = dirac_cone(neg);
  CHECK(diff(*cn.direction(), -dirac_conserved_l(neg).normalized()) < 1e-15);
  CHECK(cn.contains(neg.r));
}

TEST_CASE("dirac simulation") {
  SUBCASE("free particle is a straight line") {
    const DiracState s{Vec3(1, 0.5, 0), Vec3(-0.2, 0.3, 0.7), 0.0};
    const auto traj = simulate_dirac(s, 10.0, 1e-3);
    REQUIRE_FALSE(traj.halt);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      worst = std::max(worst, (traj.states[i].head<3>() - (s.r + traj.times[i] * s.r_dot)).norm());
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("conserved vector along a trajectory") {
    const auto traj = simulate_dirac(kExample, 10.0, 1e-3);
    const auto& l = traj.monitor("L");
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) worst = std::max(worst, (l.at(i) - l.at(0)).norm());
    CHECK(worst < 1e-7);
    const auto rep = verify_theorem_dirac(traj, kExample.lambda);
    CHECK(std::abs(rep.psi - std::atan(0.5)) < 1e-12);
    CHECK(std::abs(rep.fitted_psi - std::atan(0.5)) < 1e-6);
    CHECK(rep.alpha_relation < 1e-4);
  }
  SUBCASE("radial infall halts at the apex") {
    const auto traj = simulate_dirac({Vec3(1, 0, 0), Vec3(-1, 0, 0), 1.0}, 5.0, 1e-3);
    REQUIRE(traj.halt);
    CHECK(traj.halt->kind() == ErrorKind::ApexReached);
  }
}

TEST_CASE("dirac_kaluza_klein_check") {
  CHECK(dirac_kaluza_klein_check(kExample.r, kExample.r_dot, kExample.lambda) < 1e-12);
  CHECK(dirac_kaluza_klein_check(Vec3(0.3, 1, 2), Vec3(1, -1, 0.5), 0.0) == 0.0);
  CHECK(error_kind([] { dirac_kaluza_klein_check(Vec3(0, 0, -1), Vec3(1, 0, 0), 1.0); }) ==
        ErrorKind::ChartSingularity);
}

TEST_CASE("yang_rhs") {
  YangState s{Vec4(0.1, 0.2, -0.3, 0.4), 1.5, Vec4::Zero(), 0.7, Vec3(1, 2, 3)};
  const auto d = yang_rhs(s);
  CHECK(d.u_ddot.norm() == 0.0);
  CHECK(d.r_ddot == 0.0);
  CHECK(d.e_dot.norm() == 0.0);

  test_support::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    YangState y = random_yang(rng);
    CHECK(std::abs(y.e.dot(yang_rhs(y).e_dot)) < 1e-12);
    // Zero charge: free motion, i.e. the flat cone geodesic flow.
    y.e.setZero();
    const auto free = yang_rhs(y);
    const auto cone = cones::cone_geodesic_rhs({y.u, y.r, y.u_dot, y.r_dot}, kPi / 2);
    CHECK(diff(free.u_ddot, cone.v_ddot) < 1e-12);
    CHECK(std::abs(free.r_ddot - cone.r_ddot) < 1e-12);
  }
  CHECK(error_kind([] { yang_rhs({Vec4::Zero(), 0.0, Vec4::Ones(), 0.0, Vec3::Ones()}); }) ==
        ErrorKind::ApexReached);
}

TEST_CASE("yang_conserved_l and yang_cone") {
  SUBCASE("u = 0") {
    const YangState s{Vec4::Zero(), 1.3, Vec4(0.2, -0.5, 0.1, 0.9), 0.4, Vec3(0.6, -1.1, 0.8)};
    const Vec5 l = yang_conserved_l(s);
    const Vec4 expected = s.r * s.r * gauge::charge_matrix_e(s.e).apply(s.u_dot);
    CHECK(diff(l.head<4>(), expected) < 1e-14);
    CHECK(std::abs(l[4] + s.e.squaredNorm() / 4.0) < 1e-15);
    const Vec5 x = yang_position(s);
    CHECK(std::abs(x.dot(l) / (x.norm() * l.norm()) - s.e.squaredNorm() / (4.0 * l.norm())) < 1e-14);
  }
  SUBCASE("zero charge") {
    const YangState s{Vec4(0.1, 0, 0, 0), 1.0, Vec4(0, 1, 0, 0), 0.0, Vec3::Zero()};
    CHECK(yang_conserved_l(s).norm() == 0.0);
    CHECK(error_kind([&] { yang_cone(s); }) == ErrorKind::DegenerateCharge);
  }
  SUBCASE("closed-form aperture") {
    const YangState s{Vec4::Zero(), 1.0, Vec4(1, 0, 0, 0), 0.0, Vec3(2, 0, 0)};
    CHECK(std::abs(yang_cos_aperture(s) - 1.0 / std::sqrt(5.0)) < 1e-15);
    CHECK(std::abs(yang_cone(s).cos_aperture() - 1.0 / std::sqrt(5.0)) < 1e-14);
    double prev = kPi;
    for (double m : {1.0, 10.0, 100.0}) {
      YangState t = s;
      t.e = Vec3(m, 0, 0);
      const double psi = yang_cone(t).aperture();
      CHECK(psi < prev);
      prev = psi;
    }
  }
  SUBCASE("random states") {
    test_support::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
      const YangState s = random_yang(rng);
      const Vec5 l = yang_conserved_l(s);
      CHECK(std::abs(yang_cos_aperture(s) - s.e.squaredNorm() / (4.0 * l.norm())) < 1e-12);
      CHECK(yang_cone(s).contains(yang_position(s), 1e-12));
    }
  }
  SUBCASE("colliding") {
    const YangState s{Vec4(0.1, 0, 0, 0), 1.0, Vec4::Zero(), 1.0, Vec3(1, 0, 0)};
    CHECK(yang_is_colliding(s));
    CHECK(error_kind([&] { yang_cone(s); }) == ErrorKind::CollidingState);
  }
}

TEST_CASE("yang kinematics") {
  test_support::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const YangState s = random_yang(rng);
    CHECK(diff(yang_position(s), charts::stereo_to_cartesian<4>({s.u, s.r})) < 1e-15);
    CHECK(std::abs(yang_speed(s) - yang_velocity(s).norm()) < 1e-14);
    const auto o = yang_orthogonality(s);
    CHECK(std::abs(o.rr) < 1e-10);
    CHECK(std::abs(o.rv) < 1e-10);
  }
}

TEST_CASE("yang simulation and theorem report") {
  test_support::Rng rng(5);
  const YangState s0 = random_yang(rng);
  RhsStats stats;
  const auto traj = simulate_yang(s0, 10.0, 1e-3, {}, &stats);
  REQUIRE_FALSE(traj.halt);
  CHECK(stats.evaluations == 4 * (traj.size() - 1));
  CHECK(stats.max_charge_dot < 1e-12);
  const auto rep = verify_theorem_yang(traj);
  CHECK(rep.l_drift < 1e-6);
  CHECK(rep.cos_deviation < 1e-6);
  CHECK(rep.fit_residual < 1e-6);
  CHECK(rep.alpha_relation < 1e-4);
  CHECK(rep.aperture_mismatch < 1e-6);
  CHECK(rep.geodesic_residual < 1e-6);
  CHECK(rep.charge_drift < 1e-8);

  SUBCASE("colliding ray") {
    const YangState ray{Vec4(0.2, 0, 0, 0), 1.0, Vec4::Zero(), 0.5, Vec3(1, 0, 0)};
    const auto t = simulate_yang(ray, 2.0, 1e-3);
    REQUIRE_FALSE(t.halt);
    CHECK(t.monitor("colliding").scalar(0) == 1.0);
    CHECK(error_kind([&] { verify_theorem_yang(t); }) == ErrorKind::CollidingTrajectory);
  }
  SUBCASE("corrupted charge matrix breaks conservation") {
    const YangModel bad{&corrupted_charge_matrix};
    const auto t = simulate_yang(s0, 10.0, 1e-3, bad);
    const auto& l = t.monitor("L");
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, (l.at(i) - l.at(0)).norm());
    CHECK(worst > 1e-3);
  }
}
