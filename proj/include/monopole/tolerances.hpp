#pragma once

namespace monopole {

/// Numerical thresholds shared by the library, the tests and the CLI.
struct Tolerances {
  double zero_vector = 1e-12;        // |v| below this is treated as 0
  double dependent_input = 1e-9;     // Gram-Schmidt residual / input norm
  double orthonormal = 1e-12;        // output of orthonormalize
  double rotation_check = 1e-10;     // RᵀR = I and det R = 1
  double plane_check = 1e-10;        // AffinePlane basis/offset invariants
  double chart_guard = 1e-10;        // band around a chart's excluded ray
  double no_intersection = 1e-12;    // |a| >= 1 - this => plane misses sphere
  double degenerate_apex = 1e-12;    // |a| below this => flat cone
  double not_on_cone = 1e-8;         // membership residual for cone charts
  double membership = 1e-9;          // default Cone::contains tolerance
  double rank_threshold = 1e-6;      // relative singular value for rank decisions
  double poor_fit = 1e-6;            // plane-fit residual limit
  double colliding_velocity = 1e-10; // |u̇| < this·max(1,|u|) => colliding
  double apex_guard = 1e-6;          // halt when radius < this · initial radius
  double rhs_apex = 1e-12;           // RHS refuses radii below this
  double fd_step = 1e-5;             // central first differences
  double fd_step_high = 1e-3;        // five-point stencils (third derivatives)
  double min_step = 1e-8;            // adaptive step clamp
  double max_step = 1e-1;
};

inline constexpr Tolerances kTol{};

}  // namespace monopole
