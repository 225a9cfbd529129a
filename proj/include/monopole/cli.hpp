#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "monopole/io.hpp"

namespace monopole::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kBadInput = 2,
  kHalted = 3,
  kColliding = 4,
};

struct RunConfig {
  io::ProblemKind kind = io::ProblemKind::dirac;
  // dirac: r0, v0 ∈ R³. yang: u0, du0 ∈ R⁴ and e ∈ R³. cone-geodesic: v, dv ∈ R^{n-1}.
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> charge;
  double lambda = 0.0;
  double r = 1.0;
  double r_dot = 0.0;
  double psi = 0.0;
  double t_end = 10.0;
  double step = 1e-3;
  std::string out = "-";
  io::Format format = io::Format::csv;
  std::uint64_t seed = 42;

  /// Errors: BadInput for non-finite numbers, step ≤ 0 or wrong vector sizes.
  void validate() const;
};

/// "1,0,-2.5" → {1, 0, -2.5}. Errors: BadInput.
std::vector<double> parse_vector(std::string_view text);

/// Runs one simulation; writes the table and returns the exit code.
int simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line. `out` receives tables and reports, `err` diagnostics.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monopole::cli
