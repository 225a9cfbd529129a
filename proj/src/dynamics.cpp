#include "monopole/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "monopole/charts.hpp"
#include "monopole/tolerances.hpp"

namespace monopole::dynamics {

namespace {

using geom::VecX;

Eigen::VectorXd scalar(double x) { return Eigen::VectorXd::Constant(1, x); }

double clamp_cos(double c) { return std::clamp(c, -1.0, 1.0); }

}  // namespace

// ---- Dirac -----------------------------------------------------------------

Vec6 pack(const DiracState& s) {
  Vec6 y;
  y << s.r, s.r_dot;
  return y;
}

DiracState unpack_dirac(const Vec6& y, double lambda) { return {y.head<3>(), y.tail<3>(), lambda}; }

Vec3 dirac_rhs(const DiracState& s) {
  const double n = s.r.norm();
  if (n < kTol.rhs_apex) throw Error(ErrorKind::ApexReached, "Dirac trajectory reached the origin");
  return s.lambda * s.r.cross(s.r_dot) / (n * n * n);
}

Vec3 dirac_conserved_l(const DiracState& s) {
  return s.r.cross(s.r_dot) + s.lambda * s.r / s.r.norm();
}

bool dirac_is_colliding(const DiracState& s) {
  const double n2 = s.r.squaredNorm();
  return s.r.cross(s.r_dot).norm() / n2 < kTol.colliding_velocity;
}

cones::Cone dirac_cone(const DiracState& s) {
  if (dirac_is_colliding(s)) throw Error(ErrorKind::CollidingState, "velocity is parallel to position");
  const Vec3 l = dirac_conserved_l(s);
  const double nl = l.norm();
  if (nl < kTol.zero_vector) throw Error(ErrorKind::ZeroL, "conserved vector vanishes");
  const double c = std::abs(s.lambda) / nl;
  const Vec3 dir = s.lambda < 0.0 ? Vec3(-l) : l;
  return cones::cone_from_direction(dir, std::acos(clamp_cos(c)));
}

double dirac_perpendicular_aperture(double r0, double v0, double lambda) {
  if (lambda == 0.0) return std::numbers::pi / 2.0;
  return std::atan(r0 * v0 / std::abs(lambda));
}

Orthogonality dirac_orthogonality(const DiracState& s) {
  const Vec3 a = dirac_rhs(s);
  return {a.dot(s.r), a.dot(s.r_dot)};
}

double dirac_kaluza_klein_check(const Vec3& x, const Vec3& velocity, double lambda) {
  const double r = x.norm();
  if (r < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "Kaluza-Klein check at the origin");
  if (x[2] + r < kTol.chart_guard * r) {
    throw Error(ErrorKind::ChartSingularity, "Dirac string (negative z-axis)");
  }
  const Vec3 force = 2.0 * lambda * (gauge::dirac_field_strength(x) * velocity);
  return (force - dirac_rhs({x, velocity, lambda})).norm();
}

// ---- Yang ------------------------------------------------------------------

Vec13 pack(const YangState& s) {
  Vec13 y;
  y << s.u, s.r, s.u_dot, s.r_dot, s.e;
  return y;
}

YangState unpack_yang(const Vec13& y) {
  return {y.segment<4>(0), y[4], y.segment<4>(5), y[9], y.segment<3>(10)};
}

gauge::ChargeMatrixE corrupted_charge_matrix(const Vec3& e) {
  Eigen::Matrix4d m = gauge::charge_matrix_e(e).matrix();
  m.row(3) *= -1.0;
  return gauge::ChargeMatrixE(m);
}

YangDerivative yang_rhs(const YangState& s, const YangModel& model) {
  if (!(s.r > kTol.rhs_apex)) throw Error(ErrorKind::ApexReached, "Yang trajectory reached the origin");
  const double d = s.u.squaredNorm() + 1.0;
  const double w2 = s.u_dot.squaredNorm();
  const double uw = s.u.dot(s.u_dot);
  YangDerivative out;
  out.u_ddot = -(2.0 * w2 * s.u - 4.0 * uw * s.u_dot) / d - 2.0 * s.r_dot * s.u_dot / s.r +
               model.charge_matrix(s.e).apply(s.u_dot) / (2.0 * s.r * s.r);
  out.r_ddot = 4.0 * s.r * w2 / (d * d);
  out.e_dot = -2.0 * gauge::spin_matrix_b(s.u, s.u_dot).apply(s.e);
  return out;
}

Vec5 yang_conserved_l(const YangState& s, const YangModel& model) {
  const double d = s.u.squaredNorm() + 1.0;
  const double e2 = s.e.squaredNorm();
  const double r2 = s.r * s.r;
  const double ae = gauge::gauge_matrix_a(s.u).apply(s.u_dot).dot(s.e);
  Vec5 l;
  l.head<4>() = ((e2 - 4.0 * r2 * ae) * s.u + 2.0 * r2 * model.charge_matrix(s.e).apply(s.u_dot)) / (2.0 * d);
  l[4] = 2.0 * r2 * ae / d + 0.25 * e2 * (d - 2.0) / d;
  return l;
}

bool yang_is_colliding(const YangState& s) {
  return s.u_dot.norm() < kTol.colliding_velocity * std::max(1.0, s.u.norm());
}

double yang_cos_aperture(const YangState& s) {
  const double d = s.u.squaredNorm() + 1.0;
  const double ne = s.e.norm();
  const double r2 = s.r * s.r;
  return 0.5 * ne / std::sqrt(0.25 * ne * ne + 4.0 * r2 * r2 * s.u_dot.squaredNorm() / (d * d));
}

cones::Cone yang_cone(const YangState& s, const YangModel& model) {
  if (yang_is_colliding(s)) throw Error(ErrorKind::CollidingState, "u_dot vanishes (radial motion)");
  if (s.e.norm() < kTol.zero_vector) {
    throw Error(ErrorKind::DegenerateCharge, "zero charge: the conserved vector vanishes");
  }
  const Vec5 l = yang_conserved_l(s, model);
  if (l.norm() < kTol.zero_vector) throw Error(ErrorKind::ZeroL, "conserved vector vanishes");
  return cones::cone_from_direction(l, std::acos(clamp_cos(yang_cos_aperture(s))));
}

Vec5 yang_position(const YangState& s) { return charts::stereo_to_cartesian<4>({s.u, s.r}); }

Vec5 yang_velocity(const YangState& s) {
  return charts::push_velocity<4>({s.u, s.r}, {s.u_dot, s.r_dot});
}

double yang_speed(const YangState& s) {
  const double d = s.u.squaredNorm() + 1.0;
  return std::sqrt(4.0 * s.r * s.r * s.u_dot.squaredNorm() / (d * d) + s.r_dot * s.r_dot);
}

Orthogonality yang_orthogonality(const YangState& s, const YangModel& model) {
  const YangDerivative a = yang_rhs(s, model);
  const double d = s.u.squaredNorm() + 1.0;
  const double w2 = s.u_dot.squaredNorm();
  const double r2 = s.r * s.r;
  const double rr = s.r * a.r_ddot - 4.0 * r2 * w2 / (d * d);
  const double rv = a.r_ddot * s.r_dot +
                    4.0 * (s.r_dot * s.r * w2 + r2 * s.u_dot.dot(a.u_ddot)) / (d * d) -
                    8.0 * r2 * w2 * s.u.dot(s.u_dot) / (d * d * d);
  return {rr, rv};
}

// ---- simulation --------------------------------------------------------------

integrate::Trajectory<Vec6> simulate_dirac(const DiracState& s0, double t_end, double step) {
  const double lambda = s0.lambda;
  const double r0 = s0.r.norm();
  if (r0 < kTol.zero_vector) throw Error(ErrorKind::BadInput, "initial position is the origin");
  const double colliding = dirac_is_colliding(s0) ? 1.0 : 0.0;

  integrate::OdeProblem<Vec6> p;
  p.rhs = [lambda](double, const Vec6& y) {
    const DiracState s = unpack_dirac(y, lambda);
    Vec6 dy;
    dy << s.r_dot, dirac_rhs(s);
    return dy;
  };
  p.initial = pack(s0);
  p.t_start = 0.0;
  p.t_end = t_end;
  p.step = step;
  p.guard = [r0](double, const Vec6& y) {
    if (y.head<3>().norm() < kTol.apex_guard * r0) {
      throw Error(ErrorKind::ApexReached, "radius fell below the apex guard");
    }
  };

  using Hook = integrate::MonitorHook<Vec6>;
  std::vector<Hook> hooks{
      {"speed", [](double, const Vec6& y) { return scalar(y.tail<3>().norm()); }},
      {"L", [lambda](double, const Vec6& y) {
         return Eigen::VectorXd(dirac_conserved_l(unpack_dirac(y, lambda)));
       }},
      {"cos_psi", [lambda](double, const Vec6& y) {
         const DiracState s = unpack_dirac(y, lambda);
         const Vec3 l = dirac_conserved_l(s);
         return scalar(s.r.dot(l) / (s.r.norm() * l.norm()));
       }},
      {"res_rr", [lambda](double, const Vec6& y) { return scalar(dirac_orthogonality(unpack_dirac(y, lambda)).rr); }},
      {"res_rv", [lambda](double, const Vec6& y) { return scalar(dirac_orthogonality(unpack_dirac(y, lambda)).rv); }},
      {"colliding", [colliding](double, const Vec6&) { return scalar(colliding); }},
  };
  return integrate::rk4_integrate(p, hooks);
}

integrate::Trajectory<Vec13> simulate_yang(const YangState& s0, double t_end, double step,
                                           const YangModel& model, RhsStats* stats) {
  if (!(s0.r > 0.0)) throw Error(ErrorKind::BadInput, "initial radius must be positive");
  const double r0 = s0.r;
  const double colliding = yang_is_colliding(s0) ? 1.0 : 0.0;

  integrate::OdeProblem<Vec13> p;
  p.rhs = [model, stats](double, const Vec13& y) {
    const YangState s = unpack_yang(y);
    const YangDerivative a = yang_rhs(s, model);
    if (stats != nullptr) {
      ++stats->evaluations;
      stats->max_charge_dot = std::max(stats->max_charge_dot, std::abs(s.e.dot(a.e_dot)));
    }
    Vec13 dy;
    dy << s.u_dot, s.r_dot, a.u_ddot, a.r_ddot, a.e_dot;
    return dy;
  };
  p.initial = pack(s0);
  p.t_start = 0.0;
  p.t_end = t_end;
  p.step = step;
  p.guard = [r0](double, const Vec13& y) {
    if (y[4] < kTol.apex_guard * r0) throw Error(ErrorKind::ApexReached, "radius fell below the apex guard");
    // |x| - x₅ = 2r/(|u|²+1) inside the guard band around the excluded ray.
    if (2.0 / (y.head<4>().squaredNorm() + 1.0) < kTol.chart_guard) {
      throw Error(ErrorKind::ChartSingularity, "trajectory approaches the positive x5-axis");
    }
  };

  using Hook = integrate::MonitorHook<Vec13>;
  std::vector<Hook> hooks{
      {"speed", [](double, const Vec13& y) { return scalar(yang_speed(unpack_yang(y))); }},
      {"e_norm", [](double, const Vec13& y) { return scalar(y.tail<3>().norm()); }},
      {"L", [model](double, const Vec13& y) {
         return Eigen::VectorXd(yang_conserved_l(unpack_yang(y), model));
       }},
      {"cos_psi", [model](double, const Vec13& y) {
         const YangState s = unpack_yang(y);
         const Vec5 l = yang_conserved_l(s, model);
         const double nl = l.norm();
         return scalar(nl > 0.0 ? yang_position(s).dot(l) / (s.r * nl)
                                : std::numeric_limits<double>::quiet_NaN());
       }},
      {"res_rr", [model](double, const Vec13& y) { return scalar(yang_orthogonality(unpack_yang(y), model).rr); }},
      {"res_rv", [model](double, const Vec13& y) { return scalar(yang_orthogonality(unpack_yang(y), model).rv); }},
      {"colliding", [colliding](double, const Vec13&) { return scalar(colliding); }},
  };
  return integrate::rk4_integrate(p, hooks);
}

// ---- theorem checks ------------------------------------------------------------

namespace {

// Number of leading samples with uniform spacing (a shortened final step is
// dropped) and the spacing itself.
std::pair<std::size_t, double> uniform_prefix(std::span<const double> times) {
  if (times.size() < 10) throw Error(ErrorKind::BadInput, "theorem checks need at least 10 samples");
  const double dt = times[1] - times[0];
  if (!(std::abs(dt) > 0.0)) throw Error(ErrorKind::BadInput, "repeated sample times");
  std::size_t n = 2;
  while (n < times.size() && std::abs((times[n] - times[n - 1]) - dt) <= 1e-6 * std::abs(dt)) ++n;
  if (n + 1 < times.size()) throw Error(ErrorKind::BadInput, "samples are not uniformly spaced");
  if (n < 10) throw Error(ErrorKind::BadInput, "theorem checks need at least 10 uniform samples");
  return {n, dt};
}

int stencil_stride(double dt) {
  return std::max(1, static_cast<int>(std::lround(kTol.fd_step_high / std::abs(dt))));
}

// Shared part of both reports: per-sample position, conserved vector, speed,
// relation residual at sample i given the α stencil values.
struct Series {
  std::vector<VecX> positions;
  std::vector<VecX> l;
  std::vector<double> speed;
  std::vector<Orthogonality> orth;
};

using RelationFn = std::function<VecX(std::size_t i, const VecX& a1, const VecX& a2, const VecX& a3)>;

void fill_common(TheoremReport& rep, const Series& s, const cones::Cone& cone, double cos_psi,
                 double dt, const RelationFn& relation) {
  const std::size_t n = s.positions.size();
  const VecX l0 = s.l.front();
  const VecX l0_hat = l0.normalized();
  rep.l0 = l0;
  rep.samples = n;
  for (std::size_t i = 0; i < n; ++i) {
    rep.l_drift = std::max(rep.l_drift, (s.l[i] - l0).norm());
    const double c = s.positions[i].dot(l0_hat) / s.positions[i].norm();
    rep.cos_deviation = std::max(rep.cos_deviation, std::abs(c - cos_psi));
    rep.membership = std::max(rep.membership, cone.membership_residual(s.positions[i]));
    rep.orthogonality = std::max({rep.orthogonality, std::abs(s.orth[i].rr), std::abs(s.orth[i].rv)});
    rep.speed_drift = std::max(rep.speed_drift, std::abs(s.speed[i] - s.speed[0]) / s.speed[0]);
  }

  const cones::TwoConeFit fit = cones::fit_two_cone(s.positions);
  rep.fit_residual = fit.residual;
  rep.fitted_psi = fit.cone.aperture();
  rep.aperture_mismatch = std::abs(rep.fitted_psi - rep.psi);

  const int k = stencil_stride(dt);
  const double h = k * dt;
  std::vector<VecX> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = s.positions[i].normalized();
  for (std::size_t i = 2 * k; i + 2 * k < n; ++i) {
    const VecX a1 = cones::stencil_d1(alpha[i - 2 * k], alpha[i - k], alpha[i + k], alpha[i + 2 * k], h);
    const VecX a2 = cones::stencil_d2(alpha[i - 2 * k], alpha[i - k], alpha[i], alpha[i + k], alpha[i + 2 * k], h);
    const VecX a3 = cones::stencil_d3(alpha[i - 2 * k], alpha[i - k], alpha[i + k], alpha[i + 2 * k], h);
    rep.alpha_relation = std::max(rep.alpha_relation, relation(i, a1, a2, a3).norm());
  }

  rep.geodesic_residual = cones::cone_geodesic_residual(cone, s.positions, dt, k);
}

}  // namespace

TheoremReport verify_theorem_yang(std::span<const double> times, std::span<const YangState> states,
                                  const YangModel& model) {
  if (times.size() != states.size()) throw Error(ErrorKind::BadInput, "times and states differ in length");
  const auto [n, dt] = uniform_prefix(times);
  if (yang_is_colliding(states.front())) {
    throw Error(ErrorKind::CollidingTrajectory, "colliding trajectory: no cone to verify");
  }
  const cones::Cone cone = yang_cone(states.front(), model);

  TheoremReport rep;
  rep.psi = cone.aperture();
  Series s;
  const double e0 = states.front().e.norm();
  for (std::size_t i = 0; i < n; ++i) {
    const YangState& st = states[i];
    s.positions.push_back(yang_position(st));
    s.l.push_back(yang_conserved_l(st, model));
    s.speed.push_back(yang_speed(st));
    s.orth.push_back(yang_orthogonality(st, model));
    rep.charge_drift = std::max(rep.charge_drift, std::abs(st.e.norm() - e0));
  }
  auto relation = [&](std::size_t i, const VecX& a1, const VecX& a2, const VecX& a3) {
    const YangState& st = states[i];
    const double d = st.u.squaredNorm() + 1.0;
    const double r = st.r;
    const double c = st.e.squaredNorm() / (4.0 * r * r * r * r) + 6.0 * st.r_dot * st.r_dot / (r * r) +
                     12.0 * st.u_dot.squaredNorm() / (d * d);
    return VecX(c * a1 + (6.0 * st.r_dot / r) * a2 + a3);
  };
  fill_common(rep, s, cone, cone.cos_aperture(), dt, relation);
  return rep;
}

TheoremReport verify_theorem_yang(const integrate::Trajectory<Vec13>& traj, const YangModel& model) {
  std::vector<YangState> states;
  states.reserve(traj.size());
  for (const auto& y : traj.states) states.push_back(unpack_yang(y));
  return verify_theorem_yang(traj.times, states, model);
}

TheoremReport verify_theorem_dirac(std::span<const double> times, std::span<const DiracState> states) {
  if (times.size() != states.size()) throw Error(ErrorKind::BadInput, "times and states differ in length");
  const auto [n, dt] = uniform_prefix(times);
  if (dirac_is_colliding(states.front())) {
    throw Error(ErrorKind::CollidingTrajectory, "colliding trajectory: no cone to verify");
  }
  const cones::Cone cone = dirac_cone(states.front());

  TheoremReport rep;
  rep.psi = cone.aperture();
  Series s;
  for (std::size_t i = 0; i < n; ++i) {
    const DiracState& st = states[i];
    s.positions.push_back(st.r);
    s.l.push_back(dirac_conserved_l(st));
    s.speed.push_back(st.r_dot.norm());
    s.orth.push_back(dirac_orthogonality(st));
  }
  // Orient L̂ along the cone axis so (b) compares against cos ψ ≥ 0.
  const double sign = states.front().lambda < 0.0 ? -1.0 : 1.0;
  for (auto& l : s.l) l *= sign;
  auto relation = [&](std::size_t i, const VecX& a1, const VecX& a2, const VecX& a3) {
    const DiracState& st = states[i];
    const double r = st.r.norm();
    const double rd = st.r.dot(st.r_dot) / r;
    const double w = st.r.cross(st.r_dot).norm() / (r * r);
    const double c = st.lambda * st.lambda / (r * r * r * r) + 3.0 * w * w + 6.0 * rd * rd / (r * r);
    return VecX(c * a1 + (6.0 * rd / r) * a2 + a3);
  };
  fill_common(rep, s, cone, cone.cos_aperture(), dt, relation);
  rep.l0 *= sign;
  return rep;
}

TheoremReport verify_theorem_dirac(const integrate::Trajectory<Vec6>& traj, double lambda) {
  std::vector<DiracState> states;
  states.reserve(traj.size());
  for (const auto& y : traj.states) states.push_back(unpack_dirac(y, lambda));
  return verify_theorem_dirac(traj.times, states);
}

}  // namespace monopole::dynamics
