#include "monopole/cones.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monopole/tolerances.hpp"

namespace monopole::cones {

namespace {

using geom::MatX;

// Rotates rows (i, j) of m and acc by the plane rotation that zeroes m(j, col).
void givens_zero(MatX& m, MatX& acc, int col, int i, int j) {
  const double a = m(i, col);
  const double b = m(j, col);
  if (b == 0.0) return;
  const double h = std::hypot(a, b);
  const double c = a / h;
  const double s = b / h;
  auto rotate_rows = [&](MatX& x) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      const double p = x(i, k);
      const double q = x(j, k);
      x(i, k) = c * p + s * q;
      x(j, k) = -s * p + c * q;
    }
  };
  rotate_rows(m);
  rotate_rows(acc);
  m(j, col) = 0.0;
}

// Orthogonal R (det +1) with R·cols upper triangular, Givens rotations
// applied column by column in increasing row order.
MatX givens_qr(MatX cols) {
  const auto n = cols.rows();
  MatX acc = MatX::Identity(n, n);
  for (int col = 0; col < cols.cols(); ++col) {
    for (int row = col + 1; row < n; ++row) givens_zero(cols, acc, col, col, row);
  }
  return acc;
}

}  // namespace

Cone Cone::from_plane(AffinePlane plane) {
  const double na = plane.offset().norm();
  if (na >= 1.0 - kTol.no_intersection) {
    throw Error(ErrorKind::NoIntersection, "plane misses the unit sphere (|a| >= 1)");
  }
  if (plane.dim() < 1) throw Error(ErrorKind::BadInput, "cone plane must have dimension >= 1");
  const double psi = na < kTol.degenerate_apex ? std::numbers::pi / 2.0 : std::acos(na);
  return Cone(std::move(plane), psi);
}

bool Cone::is_flat() const { return plane_.offset().norm() < kTol.degenerate_apex; }

std::optional<VecX> Cone::direction() const {
  if (dim() != ambient_dim() - 1) return std::nullopt;
  if (!is_flat()) return plane_.offset().normalized();
  auto normal = geom::complete_orthonormal(plane_.basis(), ambient_dim());
  return normal.front();
}

double Cone::membership_residual(const VecX& x) const {
  const double n = x.norm();
  if (n < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "the apex is not a cone point");
  return plane_.distance(x / n);
}

bool Cone::contains(const VecX& x, double tol) const { return membership_residual(x) <= tol; }

bool Cone::contains(const VecX& x) const { return contains(x, kTol.membership); }

VecX Cone::point(const VecX& coords, double radius) const {
  return radius * plane_sphere_intersection(plane_).point(coords);
}

Cone cone_from_direction(const VecX& direction, double psi) {
  const double n = direction.norm();
  if (n < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "cone direction is zero");
  if (!(psi > 0.0) || psi > std::numbers::pi / 2.0) {
    throw Error(ErrorKind::BadAperture, "aperture must lie in (0, pi/2]");
  }
  const VecX l = direction / n;
  const VecX ls[] = {l};
  auto basis = geom::complete_orthonormal(ls, static_cast<int>(l.size()));
  return Cone::from_plane(AffinePlane(std::cos(psi) * l, std::move(basis)));
}

geom::Sphere plane_sphere_intersection(const AffinePlane& plane) {
  const double na = plane.offset().norm();
  if (na >= 1.0 - kTol.no_intersection) {
    throw Error(ErrorKind::NoIntersection, "plane misses the unit sphere (|a| >= 1)");
  }
  return {plane.offset(), std::sqrt(1.0 - na * na), plane};
}

Canonical canonicalize_cone(const Cone& cone) {
  const int n = cone.ambient_dim();
  const int k = cone.dim();
  const bool flat = cone.is_flat();
  MatX cols(n, flat ? k : k + 1);
  for (int j = 0; j < k; ++j) cols.col(j) = cone.plane().basis()[j];
  if (!flat) cols.col(k) = cone.plane().offset().normalized();

  MatX r = givens_qr(cols);
  if (!flat && (r * cols.col(k))(k) < 0.0) {
    // Half-turn in the (0, k) plane; U stays in span(e₀ … e_{k-1}).
    r.row(k) *= -1.0;
    r.row(0) *= -1.0;
  }
  return {Rotation(std::move(r)), cone.aperture()};
}

Cone unique_embedding(const Cone& cone) {
  const VecX& a = cone.plane().offset();
  if (a.norm() < kTol.degenerate_apex) {
    throw Error(ErrorKind::DegenerateApex, "flat cone: the embedding direction is undetermined");
  }
  return cone_from_direction(a, cone.aperture());
}

VecX cone_param(double psi, const VecX& v, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::BadInput, "cone chart radius must be positive");
  const auto m = v.size();
  const double s = v.squaredNorm();
  const double rho = r * std::sin(psi);
  VecX x(m + 2);
  x.head(m) = 2.0 * rho * v / (s + 1.0);
  x[m] = rho * (s - 1.0) / (s + 1.0);
  x[m + 1] = r * std::cos(psi);
  return x;
}

ConeChartPoint cone_param_inverse(double psi, const VecX& x) {
  const auto m = x.size();
  if (m < 3) throw Error(ErrorKind::BadInput, "cone chart needs ambient dimension >= 3");
  const double r = x.norm();
  if (r < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "cone chart at the apex");
  if (std::abs(x[m - 1] - r * std::cos(psi)) > kTol.not_on_cone * r) {
    throw Error(ErrorKind::NotOnCone, "point is not on the standard cone");
  }
  const double rho = r * std::sin(psi);
  const double gap = rho - x[m - 2];
  if (gap < kTol.chart_guard * rho) {
    throw Error(ErrorKind::ChartSingularity, "point on the cone chart's excluded ray");
  }
  return {x.head(m - 2) / gap, r};
}

VecX Christoffel::contract(const VecX& a, const VecX& b) const {
  VecX out = VecX::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) out[k] += (*this)(k, i, j) * a[i] * b[j];
    }
  }
  return out;
}

Christoffel cone_christoffel(const VecX& v, double r, double psi) {
  const int d = static_cast<int>(v.size()) + 1;
  const int rn = d - 1;
  const double s1 = v.squaredNorm() + 1.0;
  const double sin2 = std::sin(psi) * std::sin(psi);
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Christoffel g(d);
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const int on_r = (i == rn) + (j == rn) + (k == rn);
        if (on_r == 0) {
          g(k, i, j) = 2.0 * (v[k] * delta(i, j) - v[i] * delta(j, k) - v[j] * delta(k, i)) / s1;
        } else if (on_r == 1) {
          g(k, i, j) = -4.0 * r * sin2 / (s1 * s1) * delta(i, j) + (delta(i, k) + delta(j, k)) / r;
        }
      }
    }
  }
  return g;
}

double cone_metric_conformal(const VecX& v, double r, double psi) {
  const double s1 = v.squaredNorm() + 1.0;
  const double sp = std::sin(psi);
  return 4.0 * r * r * sp * sp / (s1 * s1);
}

ConeAcceleration cone_geodesic_rhs(const ConeState& s, double psi) {
  if (!(s.r > 0.0)) throw Error(ErrorKind::ApexReached, "cone geodesic at the apex");
  const double s1 = s.v.squaredNorm() + 1.0;
  const double w2 = s.v_dot.squaredNorm();
  const double vw = s.v.dot(s.v_dot);
  const double sp = std::sin(psi);
  ConeAcceleration a;
  a.v_ddot = -(2.0 * w2 * s.v - 4.0 * vw * s.v_dot) / s1 - 2.0 * s.r_dot * s.v_dot / s.r;
  a.r_ddot = 4.0 * s.r * sp * sp * w2 / (s1 * s1);
  return a;
}

VecX pack(const ConeState& s) {
  const auto m = s.v.size();
  VecX y(2 * m + 2);
  y.head(m) = s.v;
  y[m] = s.r;
  y.segment(m + 1, m) = s.v_dot;
  y[2 * m + 1] = s.r_dot;
  return y;
}

ConeState unpack_cone_state(const VecX& y) {
  const auto m = (y.size() - 2) / 2;
  return {y.head(m), y[m], y.segment(m + 1, m), y[2 * m + 1]};
}

VecX cone_geodesic_field(const VecX& y, double psi) {
  const ConeState s = unpack_cone_state(y);
  const ConeAcceleration a = cone_geodesic_rhs(s, psi);
  return pack(ConeState{s.v_dot, s.r_dot, a.v_ddot, a.r_ddot});
}

double cone_speed2(const ConeState& s, double psi) {
  return cone_metric_conformal(s.v, s.r, psi) * s.v_dot.squaredNorm() + s.r_dot * s.r_dot;
}

AnalyticConeGeodesic::AnalyticConeGeodesic(double r0, double v0, double psi)
    : r0_(r0), v0_(v0), psi_(psi) {
  if (!(r0 > 0.0) || !(v0 > 0.0) || !(psi > 0.0) || psi > std::numbers::pi / 2.0) {
    throw Error(ErrorKind::BadInput, "analytic geodesic needs r0 > 0, v0 > 0, psi in (0, pi/2]");
  }
}

Vec3 AnalyticConeGeodesic::position(double t) const {
  const double rho = std::sqrt(r0_ * r0_ + v0_ * v0_ * t * t);
  const double sp = std::sin(psi_);
  const double theta = std::atan(v0_ * t / r0_) / sp;
  return rho * Vec3{sp * std::cos(theta), sp * std::sin(theta), std::cos(psi_)};
}

TwoConeFit fit_two_cone(std::span<const VecX> samples) {
  const auto count = static_cast<Eigen::Index>(samples.size());
  if (count < 10) throw Error(ErrorKind::BadInput, "plane fit needs at least 10 samples");
  const auto n = samples.front().size();
  MatX alpha(count, n);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double norm = samples[i].norm();
    if (norm < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "sample at the apex");
    alpha.row(i) = (samples[i] / norm).transpose();
  }
  const VecX mean = alpha.colwise().mean().transpose();
  const MatX centered = alpha.rowwise() - mean.transpose();
  Eigen::JacobiSVD<MatX> svd(centered, Eigen::ComputeThinV);
  const VecX sv = svd.singularValues();
  if (sv.size() < 2 || sv[0] < kTol.zero_vector || sv[1] < kTol.rank_threshold * sv[0]) {
    throw Error(ErrorKind::CollidingTrajectory, "radial projections do not span a 2-plane");
  }
  double tail = 0.0;
  for (Eigen::Index i = 2; i < sv.size(); ++i) tail += sv[i] * sv[i];
  const VecX dirs[] = {svd.matrixV().col(0), svd.matrixV().col(1)};
  Cone cone = Cone::from_plane(AffinePlane::through(mean, dirs));
  return {std::move(cone), std::sqrt(tail / static_cast<double>(count)), sv};
}

TwoConeFit reduce_to_two_cone(std::span<const VecX> samples) {
  TwoConeFit fit = fit_two_cone(samples);
  if (fit.residual > kTol.poor_fit) {
    throw Error(ErrorKind::PoorFit, "radial projections are not coplanar");
  }
  return fit;
}

double cone_geodesic_residual(const Cone& cone, std::span<const VecX> samples, double dt,
                              int stride) {
  const int m = cone.ambient_dim();
  if (cone.dim() != m - 1) throw Error(ErrorKind::BadInput, "geodesic residual needs an (n-1)-cone");
  if (stride < 1 || !(std::abs(dt) > 0.0)) throw Error(ErrorKind::BadInput, "bad stencil spacing");
  const auto count = static_cast<int>(samples.size());
  const int q = m - 1;
  const Canonical can = canonicalize_cone(cone);

  std::vector<VecX> y(samples.size());
  for (int i = 0; i < count; ++i) y[i] = can.rotation.apply(samples[i]);

  // Second rotation of the section coordinates keeping the curve off the
  // chart's excluded point e_{q-1}.
  MatX qrot;
  if (q == 2) {
    qrot = geom::rotation_mapping_to_axis(-y.front().head(2).normalized(), 1).matrix();
  } else {
    MatX w(count, q);
    for (int i = 0; i < count; ++i) w.row(i) = y[i].head(q).normalized().transpose();
    Eigen::JacobiSVD<MatX> svd(w, Eigen::ComputeThinV);
    qrot = givens_qr(svd.matrixV().leftCols(2));
  }

  struct Sample {
    bool ok = false;
    VecX v;
    double r = 0.0;
  };
  constexpr double kMaxChartNorm = 5.0;
  std::vector<Sample> chart(samples.size());
  for (int i = 0; i < count; ++i) {
    VecX z = y[i];
    z.head(q) = qrot * y[i].head(q);
    try {
      const ConeChartPoint p = cone_param_inverse(can.psi, z);
      chart[i] = {p.v.norm() <= kMaxChartNorm, p.v, p.r};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ChartSingularity) throw;
    }
  }

  const double h = stride * dt;
  double worst = -1.0;
  for (int i = 2 * stride; i + 2 * stride < count; ++i) {
    const Sample& m2 = chart[i - 2 * stride];
    const Sample& m1 = chart[i - stride];
    const Sample& c0 = chart[i];
    const Sample& p1 = chart[i + stride];
    const Sample& p2 = chart[i + 2 * stride];
    if (!(m2.ok && m1.ok && c0.ok && p1.ok && p2.ok)) continue;
    ConeState s;
    s.v = c0.v;
    s.r = c0.r;
    s.v_dot = stencil_d1(m2.v, m1.v, p1.v, p2.v, h);
    s.r_dot = stencil_d1(m2.r, m1.r, p1.r, p2.r, h);
    const VecX v_ddot = stencil_d2(m2.v, m1.v, c0.v, p1.v, p2.v, h);
    const double r_ddot = stencil_d2(m2.r, m1.r, c0.r, p1.r, p2.r, h);
    const ConeAcceleration a = cone_geodesic_rhs(s, can.psi);
    const double res = std::sqrt((v_ddot - a.v_ddot).squaredNorm() +
                                 (r_ddot - a.r_ddot) * (r_ddot - a.r_ddot));
    worst = std::max(worst, res);
  }
  if (worst < 0.0) throw Error(ErrorKind::BadInput, "no stencil window inside the cone chart");
  return worst;
}

}  // namespace monopole::cones
