#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

// Reference computations used to check the library: finite differences of
// independently written closed forms, section pullbacks, and exact
// solutions of test ODEs. Nothing here calls into the library proper.
namespace monopole::oracles {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Metric of the standard n-cone in the coordinates (v, r):
/// diag(4r² sin²ψ/(|v|²+1)² I, 1).
Mat cone_metric(const Vec& q, double psi);

/// Embedding (v, r) ↦ R^{n+1} of the standard cone, written out directly.
Vec cone_embedding(const Vec& q, double psi);

/// Numerical pullback of the Euclidean metric through cone_embedding.
Mat cone_metric_pullback(const Vec& q, double psi, double h);

/// Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il - ∂_l g_ij), metric derivatives by
/// central differences. Flattened as ((k·d + i)·d + j).
std::vector<double> christoffel_fd(const std::function<Mat(const Vec&)>& metric, const Vec& x, double h);

/// (dA)_{μν} = ∂_μ A_ν - ∂_ν A_μ for a vector-valued 1-form given by its
/// coefficient matrix A(x) (rows: Lie algebra components, columns: dx^μ).
/// Returns one antisymmetric matrix per row of A.
std::vector<Mat> exterior_derivative_fd(const std::function<Mat(const Vec&)>& a, const Vec& x, double h);

/// Max |∂_λ F_{μν} + ∂_μ F_{νλ} + ∂_ν F_{λμ}| for a scalar 2-form F(x).
double closedness_fd(const std::function<Mat(const Vec&)>& f, const Vec& x, double h);

/// Curvature of an su(2)-valued potential (3×4 coefficient matrix, su(2) ≅ R³
/// with [a, b] = 2 a×b) contracted with (a, b): dA + [A, A].
Eigen::Vector3d structure_curvature_fd(const std::function<Mat(const Vec&)>& a, const Vec& u,
                                       const Vec& da, const Vec& db, double h);

/// A_μ = θ(σ(x), ∂σ/∂x^μ), derivatives of the section by central differences.
/// θ returns the Lie algebra components. Columns of the result are μ.
Mat pullback_fd(const std::function<Vec(const Vec&)>& section,
                const std::function<Vec(const Vec&, const Vec&)>& theta, const Vec& x, double h);

/// Section over the chart with z₂ real and positive: (u r/√(|u|²+1), r/√(|u|²+1)) ∈ H².
Vec yang_section(const Vec& u, double r);

/// Section of C² → R³ over {z₁ ≠ 0} with z₁ real and positive, as a point of R⁴.
Vec dirac_section(const Vec& x);

/// Hamilton product through the left-multiplication matrix of p.
Eigen::Vector4d quaternion_product(const Eigen::Vector4d& p, const Eigen::Vector4d& q);

/// Central difference of a curve c(t) at t.
Vec derivative_fd(const std::function<Vec(double)>& c, double t, double h);

/// x(t) for ẍ = -x, x(0) = x0, ẋ(0) = v0.
Eigen::Vector2d harmonic_oscillator(double x0, double v0, double t);

}  // namespace monopole::oracles
