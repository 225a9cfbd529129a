#pragma once

#include <cmath>

#include "monopole/geom.hpp"
#include "monopole/tolerances.hpp"

// North-pole stereographic chart (u, r) on punctured R^{N+1}, N = 2 or 4,
// and the extended Hopf projections R^{2N} -> R^{N+1}.
namespace monopole::charts {

using geom::Quaternion;
using geom::Vec;

template <int N>
struct ChartPoint {
  Vec<N> u;
  double r;
};

template <int N>
struct ChartVelocity {
  Vec<N> u_dot;
  double r_dot;
};

/// Unit direction α(u) = (2u, |u|²-1)/(|u|²+1).
template <int N>
Vec<N + 1> stereo_direction(const Vec<N>& u) {
  const double s = u.squaredNorm();
  Vec<N + 1> a;
  a.template head<N>() = 2.0 * u / (s + 1.0);
  a[N] = (s - 1.0) / (s + 1.0);
  return a;
}

template <int N>
Vec<N + 1> stereo_to_cartesian(const ChartPoint<N>& p) {
  if (!(p.r > 0.0)) throw Error(ErrorKind::BadInput, "chart radius must be positive");
  return p.r * stereo_direction<N>(p.u);
}

template <int N>
ChartPoint<N> cartesian_to_stereo(const Vec<N + 1>& x) {
  const double r = x.norm();
  if (r < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "cartesian_to_stereo at the origin");
  const double gap = r - x[N];
  if (gap < kTol.chart_guard * r) {
    throw Error(ErrorKind::ChartSingularity, "point on the chart's excluded ray");
  }
  return {x.template head<N>() / gap, r};
}

/// Differential of stereo_to_cartesian applied to (u̇, ṙ).
template <int N>
Vec<N + 1> push_velocity(const ChartPoint<N>& p, const ChartVelocity<N>& v) {
  const double s = p.u.squaredNorm();
  const double d = s + 1.0;
  const double uw = p.u.dot(v.u_dot);
  Vec<N + 1> dalpha;
  dalpha.template head<N>() = 2.0 * v.u_dot / d - 4.0 * uw * p.u / (d * d);
  dalpha[N] = 4.0 * uw / (d * d);
  return v.r_dot * stereo_direction<N>(p.u) + p.r * dalpha;
}

/// Inverse of push_velocity at p.
template <int N>
ChartVelocity<N> pull_velocity(const ChartPoint<N>& p, const Vec<N + 1>& x_dot) {
  const Vec<N + 1> alpha = stereo_direction<N>(p.u);
  const double r_dot = alpha.dot(x_dot);
  const Vec<N + 1> t = (x_dot - r_dot * alpha) / p.r;
  const double d = p.u.squaredNorm() + 1.0;
  // Dα is conformal: Dαᵀ Dα = 4/(|u|²+1)² I.
  const Vec<N> top = t.template head<N>();
  const Vec<N> dt = 2.0 * top / d - 4.0 * p.u * p.u.dot(top) / (d * d) + 4.0 * p.u * t[N] / (d * d);
  return {dt * d * d / 4.0, r_dot};
}

enum class HopfField { complex, quaternion };

/// f(z1, z2) = (2 z1 z2*, |z1|² - |z2|²)/√(|z1|²+|z2|²); returns R³ for the
/// complex field and R⁵ for quaternions.
geom::VecX hopf_project(const Quaternion& z1, const Quaternion& z2, HopfField field);

struct Trivialization {
  geom::VecX base;
  Quaternion fiber;
};

/// (z1, z2) -> (f(z), z_i/|z_i|) over U_i, chart_index ∈ {1, 2}.
Trivialization local_trivialization(const Quaternion& z1, const Quaternion& z2, int chart_index,
                                    HopfField field);

}  // namespace monopole::charts
