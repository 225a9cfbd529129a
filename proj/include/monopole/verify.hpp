#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "monopole/dynamics.hpp"

// The acceptance battery: ten criteria over seeded random initial data.
namespace monopole::verify {

struct BatteryConfig {
  std::uint64_t seed = 42;
  int count = 50;          // random trajectories per monopole
  double t_end = 10.0;
  double step = 1e-3;
  double tol_scale = 1.0;  // multiplies every tolerance
  bool parallel = true;
  dynamics::YangModel model{};
};

struct CheckResult {
  std::string label;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  int failing_case = -1;  // first case that violated the tolerance
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::vector<CheckResult> checks;
  std::string error;              // set when a case could not be evaluated
  int failing_case = -1;
  std::uint64_t failing_seed = 0;
};

/// MONOPOLE_TOL_SCALE, default 1. Errors: BadInput for non-positive or
/// unparsable values.
double tol_scale_from_env();

/// Seed of case `index` in stream `stream`; splitmix64 mixing.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// mt19937_64 with a portable mapping to [0, 1) and Box-Muller normals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Eigen::VectorXd normal_vector(int n);
  Eigen::VectorXd unit_vector(int n);
  /// Unit vector making an angle β with `axis`, sin β ≥ min_sin.
  Eigen::VectorXd transverse_unit(const Eigen::VectorXd& axis, double min_sin);
  /// Uniformly random element of SO(n).
  Eigen::MatrixXd rotation(int n);

 private:
  std::mt19937_64 engine_;
};

dynamics::DiracState sample_dirac_state(Rng& rng);
dynamics::YangState sample_yang_state(Rng& rng);

std::vector<CriterionResult> run_battery(const BatteryConfig& cfg);

/// Individual groups; run_battery concatenates them in criterion order.
std::vector<CriterionResult> dirac_criteria(const BatteryConfig& cfg);      // 1, 2
CriterionResult dirac_analytic_criterion(const BatteryConfig& cfg);         // 3
std::vector<CriterionResult> yang_criteria(const BatteryConfig& cfg);       // 4, 5, 6
CriterionResult cone_geometry_criterion(const BatteryConfig& cfg);          // 7
CriterionResult cone_reduction_criterion(const BatteryConfig& cfg);         // 8
CriterionResult gauge_criterion(const BatteryConfig& cfg);                  // 9
CriterionResult integrator_criterion(const BatteryConfig& cfg);             // 10

/// One line: "C<id> PASS|FAIL <name>  label=worst/tol ...".
std::string format_result(const CriterionResult& r);

}  // namespace monopole::verify
