#include "support.hpp"

#include <numbers>

#include "monopole/dynamics.hpp"
#include "monopole/integrate.hpp"
#include "monopole/oracles.hpp"

using namespace monopole;
using namespace monopole::integrate;
using test_support::error_kind;
using V1 = Eigen::Matrix<double, 1, 1>;
using V2 = Eigen::Vector2d;

namespace {

V2 oscillator(double, const V2& y) { return {y[1], -y[0]}; }

}  // namespace

TEST_CASE("rk4: constant solution") {
  OdeProblem<V2> p{[](double, const V2&) { return V2::Zero(); }, V2(1.5, -2.0), 0.0, 3.0, 0.1, {}};
  const auto traj = rk4_integrate(p);
  CHECK(traj.size() == 31);
  for (const auto& y : traj.states) CHECK(y == V2(1.5, -2.0));
  CHECK(traj.times.back() == 3.0);
}

TEST_CASE("rk4: exponential growth") {
  OdeProblem<V1> p{[](double, const V1& y) { return y; }, V1(1.0), 0.0, 1.0, 1e-3, {}};
  const auto traj = rk4_integrate(p);
  CHECK(std::abs(traj.states.back()[0] - std::exp(1.0)) < 1e-11);
}

TEST_CASE("rk4: oscillator energy and order") {
  OdeProblem<V2> p{oscillator, V2(1.0, 0.0), 0.0, 20.0 * std::numbers::pi, 1e-3, {}};
  const auto traj = rk4_integrate(p);
  double drift = 0.0;
  for (const auto& y : traj.states) drift = std::max(drift, std::abs(y.squaredNorm() - 1.0) / 2.0);
  CHECK(drift < 1e-9);

  double prev = 0.0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    OdeProblem<V2> q{oscillator, V2(1.0, 0.0), 0.0, 10.0, h, {}};
    const double err = (rk4_integrate(q).states.back() - oracles::harmonic_oscillator(1.0, 0.0, 10.0)).norm();
    if (prev > 0.0) CHECK(std::abs(std::log2(prev / err) - 4.0) < 0.2);
    prev = err;
  }
}

TEST_CASE("rk4: uneven span, backward time, monitors") {
  std::vector<MonitorHook<V2>> hooks{{"energy", [](double, const V2& y) {
                                        Eigen::VectorXd v(1);
                                        v[0] = 0.5 * y.squaredNorm();
                                        return v;
                                      }}};
  OdeProblem<V2> p{oscillator, V2(1.0, 0.0), 0.0, -1.05, 0.1, {}};
  const auto traj = rk4_integrate(p, hooks);
  CHECK(traj.times.back() == -1.05);
  CHECK(traj.size() == 12);
  for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.times[i] < traj.times[i - 1]);
  CHECK((traj.states.back() - oracles::harmonic_oscillator(1.0, 0.0, -1.05)).norm() < 1e-6);
  const auto& m = traj.monitor("energy");
  CHECK(m.width == 1);
  CHECK(std::abs(m.scalar(traj.size() - 1) - 0.5) < 1e-6);
  CHECK(error_kind([&] { traj.monitor("missing"); }) == ErrorKind::BadInput);
}

TEST_CASE("rk4: guard halt keeps partial output") {
  OdeProblem<V1> p{[](double, const V1&) { return V1(-1.0); }, V1(1.0), 0.0, 5.0, 0.01, [](double, const V1& y) {
                     if (y[0] < 0.5) throw Error(ErrorKind::ApexReached, "below threshold");
                   }};
  const auto traj = rk4_integrate(p);
  REQUIRE(traj.halt);
  CHECK(traj.halt->kind() == ErrorKind::ApexReached);
  CHECK(traj.states.back()[0] >= 0.5);
  CHECK(traj.times.back() < 0.51);
  CHECK(error_kind([&] { traj.throw_if_halted(); }) == ErrorKind::ApexReached);
}

TEST_CASE("rk4: invalid problems") {
  OdeProblem<V1> p{[](double, const V1& y) { return y; }, V1(1.0), 0.0, 1.0, 0.0, {}};
  CHECK(error_kind([&] { rk4_integrate(p); }) == ErrorKind::BadInput);
  p.step = 0.1;
  p.t_end = 0.0;
  CHECK(error_kind([&] { rk4_integrate(p); }) == ErrorKind::BadInput);
  p.t_end = 1.0;
  p.initial[0] = std::nan("");
  CHECK(error_kind([&] { rk4_integrate(p); }) == ErrorKind::NonFiniteState);
  OdeProblem<V1> blow{[](double, const V1& y) { return V1(y[0] * y[0]); }, V1(1.0), 0.0, 2.0, 0.1, {}};
  const auto traj = rk4_integrate(blow);
  REQUIRE(traj.halt);
  CHECK(traj.halt->kind() == ErrorKind::NonFiniteState);
}

TEST_CASE("step doubling") {
  OdeProblem<V2> p{oscillator, V2(1.0, 0.0), 0.0, 10.0, 1e-2, {}};
  const auto adaptive = step_doubling_integrate(p, 1e-12);
  REQUIRE_FALSE(adaptive.halt);
  CHECK(adaptive.times.back() == 10.0);
  p.step = 1e-3;
  const auto fixed = rk4_integrate(p);
  CHECK((adaptive.states.back() - fixed.states.back()).norm() < 1e-8);
  CHECK(adaptive.accepted_steps > 0);

  CHECK(error_kind([&] { step_doubling_integrate(p, 0.0); }) == ErrorKind::BadInput);

  SUBCASE("near-apex Dirac run") {
    // Closest approach |r×ṙ|/|ṙ| = 1e-4, inside the guard radius 1e-3.
    const dynamics::DiracState s{geom::Vec3(1, 0, 0), geom::Vec3(-1, 1e-4, 0), 0.5};
    OdeProblem<dynamics::Vec6> q;
    q.rhs = [](double, const dynamics::Vec6& y) {
      const auto st = dynamics::unpack_dirac(y, 0.5);
      dynamics::Vec6 out;
      out << st.r_dot, dynamics::dirac_rhs(st);
      return out;
    };
    q.initial = dynamics::pack(s);
    q.t_end = 3.0;
    q.step = 1e-2;
    q.guard = [](double, const dynamics::Vec6& y) {
      if (y.head<3>().norm() < 1e-3) throw Error(ErrorKind::ApexReached, "apex");
    };
    const auto traj = step_doubling_integrate(q, 1e-10);
    REQUIRE(traj.halt);
    CHECK(traj.halt->kind() == ErrorKind::ApexReached);
  }
}
