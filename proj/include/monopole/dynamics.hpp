#pragma once

#include <span>
#include <vector>

#include "monopole/cones.hpp"
#include "monopole/gauge.hpp"
#include "monopole/geom.hpp"
#include "monopole/integrate.hpp"

// Equations of motion and conserved quantities of a charged particle in the
// Dirac monopole (punctured R³) and the Yang monopole (punctured R⁵, chart
// (u, r) of the north-pole stereographic projection).
namespace monopole::dynamics {

using geom::Vec3;
using geom::Vec4;
using geom::Vec5;
using Vec6 = geom::Vec<6>;
using Vec13 = geom::Vec<13>;

struct Orthogonality {
  double rr;  // r̈·r
  double rv;  // r̈·ṙ
};

// ---- Dirac -----------------------------------------------------------------

struct DiracState {
  Vec3 r;
  Vec3 r_dot;
  double lambda = 0.0;
};

Vec6 pack(const DiracState& s);
DiracState unpack_dirac(const Vec6& y, double lambda);

/// r̈ = λ r×ṙ/|r|³. Errors: ApexReached.
Vec3 dirac_rhs(const DiracState& s);

/// L = r×ṙ + λ r/|r|.
Vec3 dirac_conserved_l(const DiracState& s);

bool dirac_is_colliding(const DiracState& s);

/// The cone swept by the trajectory through s. For λ ≥ 0 it lies along L
/// with cos ψ = λ/|L|; for λ < 0 along -L with cos ψ = |λ|/|L|.
/// Errors: CollidingState, ZeroL.
cones::Cone dirac_cone(const DiracState& s);

/// arctan(r₀v₀/|λ|) for perpendicular initial data (π/2 when λ = 0).
double dirac_perpendicular_aperture(double r0, double v0, double lambda);

Orthogonality dirac_orthogonality(const DiracState& s);

/// |2λ F(ẋ) - λ r×ṙ/r³| with F the curvature components of the gauge
/// potential. Errors: ChartSingularity on the Dirac string.
double dirac_kaluza_klein_check(const Vec3& x, const Vec3& velocity, double lambda);

// ---- Yang ------------------------------------------------------------------

struct YangState {
  Vec4 u;
  double r = 1.0;
  Vec4 u_dot;
  double r_dot = 0.0;
  Vec3 e;
};

/// Packed layout [u, r, u̇, ṙ, e].
Vec13 pack(const YangState& s);
YangState unpack_yang(const Vec13& y);

/// Source of the charge matrix E(e). Swappable so a corrupted E can be
/// injected when checking that the test battery notices.
using ChargeMatrixFn = gauge::ChargeMatrixE (*)(const Vec3&);

struct YangModel {
  ChargeMatrixFn charge_matrix = &gauge::charge_matrix_e;
};

/// E(e) with its last row negated (no longer antisymmetric).
gauge::ChargeMatrixE corrupted_charge_matrix(const Vec3& e);

struct YangDerivative {
  Vec4 u_ddot;
  double r_ddot;
  Vec3 e_dot;
};

/// ü = -[2|u̇|²u - 4(u·u̇)u̇]/(|u|²+1) - 2ṙu̇/r + Eu̇/(2r²)
/// r̈ = 4r|u̇|²/(|u|²+1)²,  ė = -2Be.  Errors: ApexReached.
YangDerivative yang_rhs(const YangState& s, const YangModel& model = {});

Vec5 yang_conserved_l(const YangState& s, const YangModel& model = {});

bool yang_is_colliding(const YangState& s);

/// cos ψ = (|e|/2)(|e|²/4 + 4r⁴|u̇|²/(|u|²+1)²)^(-1/2).
double yang_cos_aperture(const YangState& s);

/// 4-cone along L with the aperture above. Errors: CollidingState, DegenerateCharge.
cones::Cone yang_cone(const YangState& s, const YangModel& model = {});

Vec5 yang_position(const YangState& s);
Vec5 yang_velocity(const YangState& s);
double yang_speed(const YangState& s);
Orthogonality yang_orthogonality(const YangState& s, const YangModel& model = {});

// ---- simulation --------------------------------------------------------------

struct RhsStats {
  std::size_t evaluations = 0;
  double max_charge_dot = 0.0;  // max |e·ė| over all RHS calls
};

/// Monitors: speed, L, cos_psi (angle of r to L(t)), res_rr, res_rv, colliding.
/// Halts with ApexReached when |r| < 1e-6·|r₀|.
integrate::Trajectory<Vec6> simulate_dirac(const DiracState& s0, double t_end, double step);

/// Monitors as for Dirac plus e_norm. Halts with ApexReached when
/// r < 1e-6·r₀ and with ChartSingularity near the chart's excluded ray.
integrate::Trajectory<Vec13> simulate_yang(const YangState& s0, double t_end, double step,
                                           const YangModel& model = {}, RhsStats* stats = nullptr);

// ---- theorem checks ------------------------------------------------------------

struct TheoremReport {
  Eigen::VectorXd l0;
  double psi = 0.0;             // aperture predicted from the initial state
  double fitted_psi = 0.0;      // aperture of the fitted 2-cone
  double l_drift = 0.0;         // (a) sup |L(t) - L(0)|
  double cos_deviation = 0.0;   // (b) sup |r̂(t)·L̂(0) - cos ψ|
  double fit_residual = 0.0;    // (c)
  double alpha_relation = 0.0;  // (d)
  double aperture_mismatch = 0.0;  // (e)
  double geodesic_residual = 0.0;  // (f)
  double membership = 0.0;      // sup cone membership residual
  double orthogonality = 0.0;   // sup |r̈·r|, |r̈·ṙ|
  double speed_drift = 0.0;     // relative
  double charge_drift = 0.0;    // Yang only
  std::size_t samples = 0;
};

/// Checks on uniformly spaced samples. Stencils use offset round(1e-3/dt).
/// Errors: CollidingTrajectory, BadInput (fewer than 10 samples, uneven spacing).
TheoremReport verify_theorem_yang(std::span<const double> times, std::span<const YangState> states,
                                  const YangModel& model = {});
TheoremReport verify_theorem_yang(const integrate::Trajectory<Vec13>& traj, const YangModel& model = {});

/// Dirac analogue; (d) uses (λ²/r⁴ + 3w² + 6ṙ²/r²)α̇ + (6ṙ/r)α̈ + α⃛ = 0, w = |r×ṙ|/r².
TheoremReport verify_theorem_dirac(std::span<const double> times, std::span<const DiracState> states);
TheoremReport verify_theorem_dirac(const integrate::Trajectory<Vec6>& traj, double lambda);

}  // namespace monopole::dynamics
