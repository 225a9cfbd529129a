#include "monopole/verify.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>

#include "monopole/batch.hpp"
#include "monopole/charts.hpp"
#include "monopole/cones.hpp"
#include "monopole/gauge.hpp"
#include "monopole/oracles.hpp"

namespace monopole::verify {

namespace {

using dynamics::DiracState;
using dynamics::YangState;
using geom::Vec3;
using geom::VecX;
using MatX = Eigen::MatrixXd;

enum Stream : std::uint64_t {
  kDiracStream = 1,
  kYangStream = 2,
  kGeometryStream = 3,
  kReductionStream = 4,
  kGaugeStream = 5,
};

constexpr int kMaxYangAttempts = 100;
constexpr double kMaxChartRadius = 4.0;
constexpr int kReductionCases = 10;

class Criterion {
 public:
  Criterion(int id, std::string name, double scale) : scale_(scale) {
    result_.id = id;
    result_.name = std::move(name);
  }

  int add(std::string label, double tol) {
    result_.checks.push_back({std::move(label), 0.0, tol * scale_, true, -1});
    return static_cast<int>(result_.checks.size()) - 1;
  }

  void observe(int check, double value, int case_index = -1) {
    CheckResult& c = result_.checks[check];
    if (std::isnan(value) || std::isnan(c.worst)) {
      c.worst = std::numeric_limits<double>::quiet_NaN();
    } else {
      c.worst = std::max(c.worst, value);
    }
    if (!(value <= c.tolerance) && c.pass) {
      c.pass = false;
      c.failing_case = case_index;
    }
  }

  void fail(const std::string& error, int case_index) {
    if (result_.error.empty()) {
      result_.error = error;
      if (case_index >= 0 && error_case_ < 0) error_case_ = case_index;
    }
  }

  CriterionResult finish(const std::function<std::uint64_t(int)>& seed_of = {}) {
    result_.pass = result_.error.empty();
    int first = error_case_;
    for (const auto& c : result_.checks) {
      if (c.pass) continue;
      result_.pass = false;
      if (first < 0) first = c.failing_case;
    }
    result_.failing_case = result_.pass ? -1 : first;
    if (result_.failing_case >= 0 && seed_of) result_.failing_seed = seed_of(result_.failing_case);
    return result_;
  }

 private:
  double scale_;
  int error_case_ = -1;
  CriterionResult result_;
};

template <class F>
auto map_cases(const BatteryConfig& cfg, std::size_t n, F&& f) {
  return cfg.parallel ? batch::parallel_map(n, std::forward<F>(f)) : batch::serial_map(n, std::forward<F>(f));
}

template <class State>
std::vector<VecX> positions_of(const integrate::Trajectory<State>& traj, int dim) {
  std::vector<VecX> out;
  out.reserve(traj.size());
  for (const auto& y : traj.states) out.emplace_back(y.head(dim));
  return out;
}

}  // namespace

double tol_scale_from_env() {
  const char* raw = std::getenv("MONOPOLE_TOL_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || !(v > 0.0)) {
    throw Error(ErrorKind::BadInput, "MONOPOLE_TOL_SCALE must be a positive real");
  }
  return v;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream * 0x10000ULL + index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd Rng::normal_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Eigen::VectorXd Rng::unit_vector(int n) {
  for (;;) {
    Eigen::VectorXd v = normal_vector(n);
    const double nv = v.norm();
    if (nv > 1e-6) return v / nv;
  }
}

Eigen::VectorXd Rng::transverse_unit(const Eigen::VectorXd& axis, double min_sin) {
  const Eigen::VectorXd a = axis.normalized();
  for (;;) {
    Eigen::VectorXd v = unit_vector(static_cast<int>(a.size()));
    const double c = v.dot(a);
    if (std::sqrt(std::max(0.0, 1.0 - c * c)) >= min_sin) return v;
  }
}

Eigen::MatrixXd Rng::rotation(int n) {
  for (;;) {
    std::vector<VecX> cols;
    for (int i = 0; i < n; ++i) cols.push_back(normal_vector(n));
    try {
      const auto q = geom::orthonormalize(cols);
      MatX m(n, n);
      for (int i = 0; i < n; ++i) m.col(i) = q[i];
      if (m.determinant() < 0.0) m.col(0) *= -1.0;
      return m;
    } catch (const Error&) {
    }
  }
}

DiracState sample_dirac_state(Rng& rng) {
  DiracState s;
  const VecX rhat = rng.unit_vector(3);
  s.r = rng.uniform(0.5, 2.0) * rhat;
  s.r_dot = rng.uniform(0.5, 2.0) * rng.transverse_unit(rhat, 0.5);
  do {
    s.lambda = rng.uniform(-3.0, 3.0);
  } while (std::abs(s.lambda) < 0.05);
  return s;
}

YangState sample_yang_state(Rng& rng) {
  YangState s;
  s.u = rng.uniform(0.0, 0.5) * rng.unit_vector(4);
  s.r = rng.uniform(1.0, 2.0);
  const geom::Vec5 alpha = charts::stereo_direction<4>(s.u);
  const geom::Vec5 x_dot = rng.uniform(0.5, 1.0) * rng.transverse_unit(alpha, std::sin(std::numbers::pi / 3.0));
  const auto v = charts::pull_velocity<4>({s.u, s.r}, x_dot);
  s.u_dot = v.u_dot;
  s.r_dot = v.r_dot;
  s.e = rng.uniform(0.5, 3.0) * rng.unit_vector(3);
  return s;
}

// ---- criteria 1, 2 ----------------------------------------------------------

namespace {

struct DiracCase {
  dynamics::TheoremReport report;
  double perpendicular_error = 0.0;
  std::string error;
};

DiracCase run_dirac_case(const BatteryConfig& cfg, std::size_t i) {
  DiracCase out;
  Rng rng(case_seed(cfg.seed, kDiracStream, i));
  const DiracState s0 = sample_dirac_state(rng);
  try {
    const auto traj = dynamics::simulate_dirac(s0, cfg.t_end, cfg.step);
    traj.throw_if_halted();
    out.report = dynamics::verify_theorem_dirac(traj, s0.lambda);

    DiracState sp = s0;
    const Vec3 rhat = s0.r.normalized();
    sp.r_dot = (s0.r_dot - s0.r_dot.dot(rhat) * rhat).normalized() * s0.r_dot.norm();
    const auto perp = dynamics::simulate_dirac(sp, cfg.t_end, cfg.step);
    perp.throw_if_halted();
    const auto fit = cones::fit_two_cone(positions_of(perp, 3));
    const double expected = dynamics::dirac_perpendicular_aperture(sp.r.norm(), sp.r_dot.norm(), sp.lambda);
    out.perpendicular_error = std::abs(fit.cone.aperture() - expected);
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<CriterionResult> dirac_criteria(const BatteryConfig& cfg) {
  const auto cases = map_cases(cfg, static_cast<std::size_t>(cfg.count),
                               [&](std::size_t i) { return run_dirac_case(cfg, i); });
  Criterion c1(1, "dirac-conservation", cfg.tol_scale);
  const int l_drift = c1.add("l_drift", 1e-6);
  const int speed = c1.add("speed_drift", 1e-7);
  Criterion c2(2, "dirac-cone-law", cfg.tol_scale);
  const int cosdev = c2.add("cos_deviation", 1e-6);
  const int perp = c2.add("perpendicular_psi", 1e-6);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const int ci = static_cast<int>(i);
    const auto& k = cases[i];
    if (!k.error.empty()) {
      c1.fail(k.error, ci);
      c2.fail(k.error, ci);
      continue;
    }
    c1.observe(l_drift, k.report.l_drift, ci);
    c1.observe(speed, k.report.speed_drift, ci);
    c2.observe(cosdev, k.report.cos_deviation, ci);
    c2.observe(perp, k.perpendicular_error, ci);
  }
  auto seed_of = [&](int i) { return case_seed(cfg.seed, kDiracStream, static_cast<std::uint64_t>(i)); };
  return {c1.finish(seed_of), c2.finish(seed_of)};
}

// ---- criterion 3 ----------------------------------------------------------------

CriterionResult dirac_analytic_criterion(const BatteryConfig& cfg) {
  Criterion c(3, "dirac-analytic-solution", cfg.tol_scale);
  const int pos = c.add("max_position_error", 1e-5);
  try {
    const DiracState s0{Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0), 2.0};
    const cones::Canonical can = cones::canonicalize_cone(dynamics::dirac_cone(s0));
    const MatX rot = can.rotation.matrix();
    const Vec3 y0 = rot * s0.r;
    const double phi0 = std::atan2(y0[1], y0[0]);
    const MatX spin = Eigen::AngleAxisd(-phi0, Vec3::UnitZ()).toRotationMatrix();
    const MatX frame = spin * rot;
    const cones::AnalyticConeGeodesic exact(s0.r.norm(), s0.r_dot.norm(), can.psi);
    double worst = 0.0;
    for (const double t_end : {5.0, -5.0}) {
      const auto traj = dynamics::simulate_dirac(s0, t_end, cfg.step);
      traj.throw_if_halted();
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const Vec3 x = frame * traj.states[i].head<3>();
        worst = std::max(worst, (x - exact.position(traj.times[i])).norm());
      }
    }
    c.observe(pos, worst, 0);
  } catch (const Error& e) {
    c.fail(e.what(), 0);
  }
  return c.finish();
}

// ---- criteria 4, 5, 6 -------------------------------------------------------------

namespace {

struct YangCase {
  // Conservation, read off the monitors.
  double l_drift = 0.0;
  double e_drift = 0.0;
  double speed_drift = 0.0;
  double max_charge_dot = 0.0;
  // Cone checks; theorem_error is set when they could not be evaluated.
  dynamics::TheoremReport report;
  std::string theorem_error;
  int attempts = 0;
  std::string error;
};

void monitor_drifts(const integrate::Trajectory<dynamics::Vec13>& traj, YangCase& out) {
  const auto& l = traj.monitor("L");
  const auto& e = traj.monitor("e_norm");
  const auto& v = traj.monitor("speed");
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out.l_drift = std::max(out.l_drift, (l.at(i) - l.at(0)).norm());
    out.e_drift = std::max(out.e_drift, std::abs(e.scalar(i) - e.scalar(0)));
    out.speed_drift = std::max(out.speed_drift, std::abs(v.scalar(i) - v.scalar(0)) / v.scalar(0));
  }
}

YangCase run_yang_case(const BatteryConfig& cfg, std::size_t i) {
  YangCase out;
  Rng rng(case_seed(cfg.seed, kYangStream, i));
  std::string last_reason = "no attempt";
  for (out.attempts = 1; out.attempts <= kMaxYangAttempts; ++out.attempts) {
    const YangState s0 = sample_yang_state(rng);
    dynamics::RhsStats stats;
    const auto traj = dynamics::simulate_yang(s0, cfg.t_end, cfg.step, cfg.model, &stats);
    if (traj.halt) {
      last_reason = traj.halt->what();
      continue;
    }
    double umax = 0.0;
    for (const auto& y : traj.states) umax = std::max(umax, y.head<4>().norm());
    if (umax > kMaxChartRadius) {
      last_reason = "chart coordinate left |u| <= 4";
      continue;
    }
    monitor_drifts(traj, out);
    out.max_charge_dot = stats.max_charge_dot;
    try {
      out.report = dynamics::verify_theorem_yang(traj, cfg.model);
    } catch (const Error& e) {
      out.theorem_error = e.what();
    }
    return out;
  }
  out.error = "every sampled initial state was rejected (last: " + last_reason + ")";
  return out;
}

}  // namespace

std::vector<CriterionResult> yang_criteria(const BatteryConfig& cfg) {
  const auto cases = map_cases(cfg, static_cast<std::size_t>(cfg.count),
                               [&](std::size_t i) { return run_yang_case(cfg, i); });
  Criterion c4(4, "yang-charge-conservation", cfg.tol_scale);
  const int l_drift = c4.add("l_drift", 1e-6);
  const int e_drift = c4.add("e_norm_drift", 1e-8);
  const int speed = c4.add("speed_drift", 1e-7);
  const int edot = c4.add("e_dot_e", 1e-12);
  Criterion c5(5, "yang-cone-theorem", cfg.tol_scale);
  const int member = c5.add("membership", 1e-6);
  const int cosdev = c5.add("cos_deviation", 1e-6);
  const int fit = c5.add("plane_fit", 1e-6);
  const int aperture = c5.add("aperture", 1e-6);
  const int geodesic = c5.add("geodesic", 1e-6);
  const int orth = c5.add("orthogonality", 1e-10);
  Criterion c6(6, "alpha-derivative-relation", cfg.tol_scale);
  const int alpha = c6.add("alpha_relation", 1e-4);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const int ci = static_cast<int>(i);
    const auto& k = cases[i];
    if (!k.error.empty()) {
      c4.fail(k.error, ci);
      c5.fail(k.error, ci);
      c6.fail(k.error, ci);
      continue;
    }
    c4.observe(l_drift, k.l_drift, ci);
    c4.observe(e_drift, k.e_drift, ci);
    c4.observe(speed, k.speed_drift, ci);
    c4.observe(edot, k.max_charge_dot, ci);
    if (!k.theorem_error.empty()) {
      c5.fail(k.theorem_error, ci);
      c6.fail(k.theorem_error, ci);
      continue;
    }
    const auto& r = k.report;
    c5.observe(member, r.membership, ci);
    c5.observe(cosdev, r.cos_deviation, ci);
    c5.observe(fit, r.fit_residual, ci);
    c5.observe(aperture, r.aperture_mismatch, ci);
    c5.observe(geodesic, r.geodesic_residual, ci);
    c5.observe(orth, r.orthogonality, ci);
    c6.observe(alpha, r.alpha_relation, ci);
  }
  auto seed_of = [&](int i) { return case_seed(cfg.seed, kYangStream, static_cast<std::uint64_t>(i)); };
  return {c4.finish(seed_of), c5.finish(seed_of), c6.finish(seed_of)};
}

// ---- criterion 7 -------------------------------------------------------------------

namespace {

geom::AffinePlane random_plane(Rng& rng, int n, int k, double a_min, double a_max) {
  std::vector<VecX> dirs;
  for (int i = 0; i < k; ++i) dirs.push_back(rng.normal_vector(n));
  auto basis = geom::orthonormalize(dirs);
  VecX a = rng.normal_vector(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) a -= b.dot(a) * b;
  }
  a = a.normalized() * rng.uniform(a_min, a_max);
  return geom::AffinePlane(a, std::move(basis));
}

}  // namespace

CriterionResult cone_geometry_criterion(const BatteryConfig& cfg) {
  Criterion c(7, "cone-geometry-oracles", cfg.tol_scale);
  const int chris = c.add("christoffel", 1e-6);
  const int sphere = c.add("sphere_radius", 1e-12);
  const int canon = c.add("canonical_form", 1e-10);
  const int embed = c.add("embedding_containment", 1e-10);
  Rng rng(case_seed(cfg.seed, kGeometryStream, 0));
  try {
    for (int i = 0; i < 100; ++i) {
      const int m = 1 + i % 3;
      VecX v(m);
      for (int j = 0; j < m; ++j) v[j] = rng.uniform(-1.0, 1.0);
      const double r = rng.uniform(0.5, 2.0);
      const double psi = rng.uniform(0.1, std::numbers::pi / 2.0);
      VecX q(m + 1);
      q << v, r;
      const auto closed = cones::cone_christoffel(v, r, psi);
      const auto fd = oracles::christoffel_fd([psi](const VecX& x) { return oracles::cone_metric(x, psi); },
                                              q, kTol.fd_step);
      const int d = m + 1;
      double worst = 0.0;
      for (int k = 0; k < d; ++k) {
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            worst = std::max(worst, std::abs(closed(k, a, b) - fd[static_cast<std::size_t>((k * d + a) * d + b)]));
          }
        }
      }
      c.observe(chris, worst, i);
    }

    for (int i = 0; i < 100; ++i) {
      const int n = 3 + i % 3;
      const int k = 1 + static_cast<int>(rng.uniform() * (n - 1));
      const geom::AffinePlane plane = random_plane(rng, n, k, 0.0, 0.9);
      const geom::Sphere s = cones::plane_sphere_intersection(plane);
      // Intersect a random line of P with the unit sphere directly.
      VecX p0 = plane.offset();
      for (const auto& b : plane.basis()) p0 += rng.uniform(-0.3, 0.3) * s.radius * b;
      VecX w = VecX::Zero(n);
      for (const auto& b : plane.basis()) w += rng.normal() * b;
      w.normalize();
      const double bq = p0.dot(w);
      const double cq = p0.squaredNorm() - 1.0;
      const VecX hit = p0 + (-bq + std::sqrt(bq * bq - cq)) * w;
      c.observe(sphere, std::abs((hit - s.center).norm() - s.radius), i);
      c.observe(sphere, std::abs(s.point(VecX::Unit(k, 0)).norm() - 1.0), i);
    }

    for (int i = 0; i < 10; ++i) {
      cones::Cone cone = [&] {
        if (i == 0) return cones::cone_from_direction(Vec3(1.0, 1.0, 1.0) / std::sqrt(3.0), std::numbers::pi / 6.0);
        const int n = 3 + i % 3;
        const int k = 1 + static_cast<int>(rng.uniform() * (n - 1));
        return cones::Cone::from_plane(random_plane(rng, n, k, 0.05, 0.95));
      }();
      const cones::Canonical can = cones::canonicalize_cone(cone);
      const int k = cone.dim();
      for (int j = 0; j < 100; ++j) {
        const VecX x = cone.point(rng.unit_vector(k), rng.uniform(0.5, 2.0));
        const VecX y = can.rotation.apply(x);
        double res = std::abs(y[k] - std::cos(can.psi) * y.norm());
        for (int t = k + 1; t < y.size(); ++t) res = std::max(res, std::abs(y[t]));
        c.observe(canon, res, i);
      }
    }

    for (int i = 0; i < 10; ++i) {
      const int n = 3 + i % 3;
      const int k = n == 3 ? 1 : 1 + static_cast<int>(rng.uniform() * (n - 2));
      const cones::Cone d = cones::Cone::from_plane(random_plane(rng, n, k, 0.05, 0.95));
      const cones::Cone e = cones::unique_embedding(d);
      c.observe(embed, std::abs(e.aperture() - d.aperture()), i);
      for (int j = 0; j < 100; ++j) {
        c.observe(embed, e.membership_residual(d.point(rng.unit_vector(k), rng.uniform(0.5, 2.0))), i);
      }
    }
  } catch (const Error& e) {
    c.fail(e.what(), -1);
  }
  return c.finish();
}

// ---- criterion 8 ---------------------------------------------------------------------

namespace {

// Initial chart data of a geodesic on the standard 4-cone whose great circle
// of directions stays at least ~25° from the chart's excluded point.
cones::ConeState sample_cone_geodesic(Rng& rng) {
  for (;;) {
    cones::ConeState s;
    s.v = rng.uniform(0.0, 1.0) * rng.unit_vector(3);
    s.v_dot = rng.uniform(0.3, 1.0) * rng.unit_vector(3);
    s.r = rng.uniform(0.5, 2.0);
    s.r_dot = rng.uniform(-0.5, 0.5);
    const geom::Vec3 v3 = s.v;
    const geom::Vec4 w = charts::stereo_direction<3>(v3);
    const geom::Vec4 w_dot = charts::push_velocity<3>({v3, 1.0}, {geom::Vec3(s.v_dot), 0.0});
    const VecX dirs[] = {VecX(w), VecX(w_dot)};
    const auto basis = geom::orthonormalize(dirs);
    const double reach = std::hypot(basis[0][3], basis[1][3]);
    if (reach < 0.9) return s;
  }
}

}  // namespace

CriterionResult cone_reduction_criterion(const BatteryConfig& cfg) {
  Criterion c(8, "cone-geodesic-reduction", cfg.tol_scale);
  const int aperture = c.add("two_cone_aperture", 1e-8);
  const int plane = c.add("plane_fit", 1e-6);
  const int residual = c.add("embedded_geodesic", 1e-8);
  const int normal = c.add("normal_acceleration", 1e-8);
  auto seed_of = [&](int i) {
    return case_seed(cfg.seed, kReductionStream, static_cast<std::uint64_t>(i));
  };

  struct Outcome {
    double aperture = 0.0, plane = 0.0, residual = 0.0, normal = 0.0;
    std::string error;
  };
  const auto cases = map_cases(cfg, kReductionCases, [&](std::size_t i) {
    Outcome o;
    Rng rng(seed_of(static_cast<int>(i)));
    try {
      // n-cone geodesic -> 2-cone.
      const double psi = i == 0 ? std::numbers::pi / 5.0 : rng.uniform(0.2, 1.5);
      integrate::OdeProblem<VecX> p;
      p.rhs = [psi](double, const VecX& y) { return cones::cone_geodesic_field(y, psi); };
      p.initial = cones::pack(sample_cone_geodesic(rng));
      p.t_end = cfg.t_end;
      p.step = cfg.step;
      const auto traj = integrate::rk4_integrate(p);
      traj.throw_if_halted();
      std::vector<VecX> xs;
      xs.reserve(traj.size());
      for (const auto& y : traj.states) {
        const cones::ConeState s = cones::unpack_cone_state(y);
        xs.push_back(cones::cone_param(psi, s.v, s.r));
      }
      const auto fit = cones::fit_two_cone(xs);
      o.aperture = std::abs(fit.cone.aperture() - psi);
      o.plane = fit.residual;

      // Analytic 2-cone geodesic placed inside the 4-cone of the same aperture.
      const double psi2 = rng.uniform(std::numbers::pi / 8.0, 1.4);
      const cones::AnalyticConeGeodesic g(rng.uniform(1.0, 2.0), rng.uniform(0.5, 1.0), psi2);
      const MatX q = rng.rotation(4);
      auto embed = [&](double t) {
        const Vec3 x = g.position(t);
        geom::Vec4 head(x[0], x[1], 0.0, 0.0);
        VecX out(5);
        out << q * head, x[2];
        return out;
      };
      // Spacing balances stencil truncation against cancellation error.
      const double dt = 2.5e-3;
      const int n = static_cast<int>(std::lround(10.0 / dt));
      std::vector<VecX> emb;
      for (int j = 0; j <= n; ++j) emb.push_back(embed(-5.0 + j * dt));
      VecX axis = VecX::Zero(5);
      axis[4] = 1.0;
      o.residual = cones::cone_geodesic_residual(cones::cone_from_direction(axis, psi2), emb, dt, 1);
      for (int j = 2; j + 2 <= n; ++j) {
        const VecX a = cones::stencil_d2(emb[j - 2], emb[j - 1], emb[j], emb[j + 1], emb[j + 2], dt);
        const VecX v = cones::stencil_d1(emb[j - 2], emb[j - 1], emb[j + 1], emb[j + 2], dt);
        o.normal = std::max({o.normal, std::abs(a.dot(emb[j].normalized())), std::abs(a.dot(v.normalized()))});
      }
    } catch (const Error& e) {
      o.error = e.what();
    }
    return o;
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const int ci = static_cast<int>(i);
    if (!cases[i].error.empty()) {
      c.fail(cases[i].error, ci);
      continue;
    }
    c.observe(aperture, cases[i].aperture, ci);
    c.observe(plane, cases[i].plane, ci);
    c.observe(residual, cases[i].residual, ci);
    c.observe(normal, cases[i].normal, ci);
  }
  return c.finish(seed_of);
}

// ---- criterion 9 -----------------------------------------------------------------------

CriterionResult gauge_criterion(const BatteryConfig& cfg) {
  Criterion c(9, "gauge-consistency", cfg.tol_scale);
  const int kk = c.add("kaluza_klein", 1e-10);
  const int structure = c.add("yang_structure", 1e-6);
  const int theta = c.add("theta_reproducing", 1e-12);
  const int exact = c.add("identities_exact", 1e-10);
  const int fd = c.add("identity_fd", 1e-6);
  const int dirac_da = c.add("dirac_dA", 1e-6);
  const int pullback = c.add("yang_pullback", 1e-6);
  Rng rng(case_seed(cfg.seed, kGaugeStream, 0));
  try {
    for (int i = 0; i < 1000; ++i) {
      Vec3 x;
      do {
        x = rng.uniform(0.5, 2.0) * rng.unit_vector(3);
      } while (x[2] + x.norm() < 0.1 * x.norm());
      const Vec3 v = rng.uniform(0.5, 2.0) * rng.unit_vector(3);
      c.observe(kk, dynamics::dirac_kaluza_klein_check(x, v, rng.uniform(-3.0, 3.0)), i);

      const geom::Vec8 p = rng.normal_vector(8);
      const auto ls = gauge::vertical_fields_su2(p);
      for (int j = 0; j < 3; ++j) {
        c.observe(theta, (gauge::connection_theta_su2(p, ls[j]) - Vec3::Unit(j)).cwiseAbs().maxCoeff(), i);
      }

      geom::Vec4 u;
      for (int j = 0; j < 4; ++j) u[j] = rng.uniform(-1.0, 1.0);
      const geom::Vec4 ud = rng.normal_vector(4);
      const Vec3 e = rng.normal_vector(3);
      const auto id = gauge::yang_identities_check(u, ud, e);
      c.observe(exact, std::max(id.charge_projection, id.charge_transport), i);
      c.observe(fd, id.charge_derivative, i);
    }

    const double h = kTol.fd_step;
    for (int i = 0; i < 100; ++i) {
      geom::Vec4 u;
      for (int j = 0; j < 4; ++j) u[j] = rng.uniform(-1.0, 1.0);
      const geom::Vec4 a = rng.normal_vector(4);
      const geom::Vec4 b = rng.normal_vector(4);
      auto pot = [](const VecX& w) { return MatX(gauge::gauge_matrix_a(geom::Vec4(w)).matrix()); };
      const Vec3 ref = oracles::structure_curvature_fd(pot, u, a, b, h);
      c.observe(structure, (gauge::yang_curvature(u, a, b) - ref).norm(), i);

      const double r = rng.uniform(0.5, 2.0);
      const MatX pulled = oracles::pullback_fd(
          [r](const VecX& w) { return oracles::yang_section(w, r); },
          [](const VecX& pt, const VecX& xv) {
            return VecX(gauge::connection_theta_su2(geom::Vec8(pt), geom::Vec8(xv)));
          },
          u, h);
      c.observe(pullback, (pulled - gauge::gauge_matrix_a(u).matrix()).cwiseAbs().maxCoeff(), i);

      Vec3 x;
      do {
        x = rng.uniform(0.5, 2.0) * rng.unit_vector(3);
      } while (x[2] + x.norm() < 0.2 * x.norm());
      auto dirac_pot = [](const VecX& w) { return MatX(gauge::dirac_gauge_potential(Vec3(w)).transpose()); };
      const MatX d = oracles::exterior_derivative_fd(dirac_pot, x, h).front();
      const Vec3 f = gauge::dirac_curvature(x);
      const double err = std::max({std::abs(d(0, 1) - f[0]), std::abs(d(0, 2) - f[1]), std::abs(d(1, 2) - f[2])});
      c.observe(dirac_da, err, i);
    }
  } catch (const Error& e) {
    c.fail(e.what(), -1);
  }
  return c.finish();
}

// ---- criterion 10 ------------------------------------------------------------------------

CriterionResult integrator_criterion(const BatteryConfig& cfg) {
  Criterion c(10, "integrator-calibration", cfg.tol_scale);
  const int order = c.add("rk4_order_minus_4", 0.2);
  const int growth = c.add("exp_error", 1e-11);
  const int energy = c.add("oscillator_energy", 1e-9);
  try {
    using V2 = Eigen::Vector2d;
    auto oscillator = [](double, const V2& y) { return V2(y[1], -y[0]); };
    const double t_end = 10.0;
    std::vector<double> errors;
    for (const double h : {1e-2, 5e-3, 2.5e-3}) {
      integrate::OdeProblem<V2> p{oscillator, V2(1.0, 0.0), 0.0, t_end, h, {}};
      const auto traj = integrate::rk4_integrate(p);
      traj.throw_if_halted();
      errors.push_back((traj.states.back() - oracles::harmonic_oscillator(1.0, 0.0, t_end)).norm());
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      c.observe(order, std::abs(std::log2(errors[i] / errors[i + 1]) - 4.0));
    }

    using V1 = Eigen::Matrix<double, 1, 1>;
    integrate::OdeProblem<V1> g{[](double, const V1& y) { return y; }, V1(1.0), 0.0, 1.0, 1e-3, {}};
    const auto traj = integrate::rk4_integrate(g);
    traj.throw_if_halted();
    c.observe(growth, std::abs(traj.states.back()[0] - std::exp(1.0)));

    integrate::OdeProblem<V2> q{oscillator, V2(1.0, 0.0), 0.0, 20.0 * std::numbers::pi, 1e-3, {}};
    const auto osc = integrate::rk4_integrate(q);
    osc.throw_if_halted();
    double drift = 0.0;
    for (const auto& y : osc.states) drift = std::max(drift, std::abs(0.5 * y.squaredNorm() - 0.5));
    c.observe(energy, drift);
  } catch (const Error& e) {
    c.fail(e.what(), -1);
  }
  return c.finish();
}

std::vector<CriterionResult> run_battery(const BatteryConfig& cfg) {
  if (cfg.count < 1) throw Error(ErrorKind::BadInput, "count must be at least 1");
  if (!(cfg.step > 0.0) || !(cfg.t_end > 0.0)) throw Error(ErrorKind::BadInput, "step and t_end must be positive");
  std::vector<CriterionResult> out = dirac_criteria(cfg);
  out.push_back(dirac_analytic_criterion(cfg));
  for (auto& r : yang_criteria(cfg)) out.push_back(std::move(r));
  out.push_back(cone_geometry_criterion(cfg));
  out.push_back(cone_reduction_criterion(cfg));
  out.push_back(gauge_criterion(cfg));
  out.push_back(integrator_criterion(cfg));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "C%-2d %s  %-27s", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str());
  std::string line = buf;
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, " %s=%.3g/%.3g", c.label.c_str(), c.worst, c.tolerance);
    line += buf;
  }
  if (!r.pass && r.failing_case >= 0) {
    std::snprintf(buf, sizeof buf, "  [case %d, seed 0x%016" PRIx64 "]", r.failing_case, r.failing_seed);
    line += buf;
  }
  if (!r.error.empty()) line += "  error: " + r.error;
  return line;
}

}  // namespace monopole::verify
