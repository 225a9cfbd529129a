#include "monopole/oracles.hpp"

#include <cmath>

namespace monopole::oracles {

Mat cone_metric(const Vec& q, double psi) {
  const auto d = q.size();
  const Vec v = q.head(d - 1);
  const double r = q[d - 1];
  const double s = v.squaredNorm() + 1.0;
  const double sp = std::sin(psi);
  Mat g = Mat::Identity(d, d) * (4.0 * r * r * sp * sp / (s * s));
  g(d - 1, d - 1) = 1.0;
  return g;
}

Vec cone_embedding(const Vec& q, double psi) {
  const auto d = q.size();
  const Vec v = q.head(d - 1);
  const double r = q[d - 1];
  const double s = v.squaredNorm();
  Vec x(d + 1);
  for (Eigen::Index i = 0; i + 1 < d; ++i) x[i] = 2.0 * v[i] / (s + 1.0) * r * std::sin(psi);
  x[d - 1] = (s - 1.0) / (s + 1.0) * r * std::sin(psi);
  x[d] = r * std::cos(psi);
  return x;
}

Mat cone_metric_pullback(const Vec& q, double psi, double h) {
  const auto d = q.size();
  Mat jac(d + 1, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    jac.col(i) = (cone_embedding(qp, psi) - cone_embedding(qm, psi)) / (2.0 * h);
  }
  return jac.transpose() * jac;
}

std::vector<double> christoffel_fd(const std::function<Mat(const Vec&)>& metric, const Vec& x, double h) {
  const auto d = x.size();
  std::vector<Mat> dg(d);  // dg[l](i, j) = ∂_l g_ij
  for (Eigen::Index l = 0; l < d; ++l) {
    Vec xp = x, xm = x;
    xp[l] += h;
    xm[l] -= h;
    dg[l] = (metric(xp) - metric(xm)) / (2.0 * h);
  }
  const Mat ginv = metric(x).inverse();
  std::vector<double> out(static_cast<std::size_t>(d * d * d), 0.0);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        double sum = 0.0;
        for (Eigen::Index l = 0; l < d; ++l) {
          sum += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        out[static_cast<std::size_t>((k * d + i) * d + j)] = 0.5 * sum;
      }
    }
  }
  return out;
}

std::vector<Mat> exterior_derivative_fd(const std::function<Mat(const Vec&)>& a, const Vec& x, double h) {
  const auto d = x.size();
  std::vector<Mat> da(d);  // da[m] = ∂_m A
  for (Eigen::Index m = 0; m < d; ++m) {
    Vec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    da[m] = (a(xp) - a(xm)) / (2.0 * h);
  }
  const auto rows = da.front().rows();
  std::vector<Mat> out(rows, Mat::Zero(d, d));
  for (Eigen::Index c = 0; c < rows; ++c) {
    for (Eigen::Index mu = 0; mu < d; ++mu) {
      for (Eigen::Index nu = 0; nu < d; ++nu) out[c](mu, nu) = da[mu](c, nu) - da[nu](c, mu);
    }
  }
  return out;
}

double closedness_fd(const std::function<Mat(const Vec&)>& f, const Vec& x, double h) {
  const auto d = x.size();
  std::vector<Mat> df(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    Vec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    df[m] = (f(xp) - f(xm)) / (2.0 * h);
  }
  double worst = 0.0;
  for (Eigen::Index l = 0; l < d; ++l) {
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index n = 0; n < d; ++n) {
        const double c = df[l](m, n) + df[m](n, l) + df[n](l, m);
        worst = std::max(worst, std::abs(c));
      }
    }
  }
  return worst;
}

Eigen::Vector3d structure_curvature_fd(const std::function<Mat(const Vec&)>& a, const Vec& u,
                                       const Vec& da, const Vec& db, double h) {
  const std::vector<Mat> d = exterior_derivative_fd(a, u, h);
  const Mat a0 = a(u);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (Eigen::Index mu = 0; mu < u.size(); ++mu) {
    for (Eigen::Index nu = 0; nu < u.size(); ++nu) {
      const Eigen::Vector3d amu = a0.col(mu);
      const Eigen::Vector3d anu = a0.col(nu);
      const Eigen::Vector3d bracket = 2.0 * amu.cross(anu);
      Eigen::Vector3d f;
      for (int c = 0; c < 3; ++c) f[c] = d[c](mu, nu) + bracket[c];
      out += da[mu] * db[nu] * f;
    }
  }
  return out;
}

Mat pullback_fd(const std::function<Vec(const Vec&)>& section,
                const std::function<Vec(const Vec&, const Vec&)>& theta, const Vec& x, double h) {
  const Vec p = section(x);
  Mat out;
  for (Eigen::Index mu = 0; mu < x.size(); ++mu) {
    Vec xp = x, xm = x;
    xp[mu] += h;
    xm[mu] -= h;
    const Vec col = theta(p, (section(xp) - section(xm)) / (2.0 * h));
    if (mu == 0) out.resize(col.size(), x.size());
    out.col(mu) = col;
  }
  return out;
}

Vec yang_section(const Vec& u, double r) {
  const double t = r / std::sqrt(u.squaredNorm() + 1.0);
  Vec p = Vec::Zero(8);
  p.head(4) = t * u;
  p[4] = t;
  return p;
}

Vec dirac_section(const Vec& x) {
  const double r = x.norm();
  // f(z) = (2 z₁ z̄₂, |z₁|² - |z₂|²)/|z| with |z|² = r², z₁ = t > 0.
  const double t = std::sqrt(0.5 * (r * r + r * x[2]));
  const double w_re = 0.5 * r * x[0];
  const double w_im = 0.5 * r * x[1];
  Vec p(4);
  p << t, 0.0, w_re / t, -w_im / t;
  return p;
}

Eigen::Vector4d quaternion_product(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
  Eigen::Matrix4d left;
  left << p[0], -p[1], -p[2], -p[3],
          p[1], p[0], -p[3], p[2],
          p[2], p[3], p[0], -p[1],
          p[3], -p[2], p[1], p[0];
  return left * q;
}

Vec derivative_fd(const std::function<Vec(double)>& c, double t, double h) {
  return (c(t + h) - c(t - h)) / (2.0 * h);
}

Eigen::Vector2d harmonic_oscillator(double x0, double v0, double t) {
  return {x0 * std::cos(t) + v0 * std::sin(t), -x0 * std::sin(t) + v0 * std::cos(t)};
}

}  // namespace monopole::oracles
