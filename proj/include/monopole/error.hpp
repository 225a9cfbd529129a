#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monopole {

enum class ErrorKind {
  DependentInput,
  ZeroVector,
  ChartSingularity,
  OutsideChart,
  NoIntersection,
  DegenerateApex,
  NotOnCone,
  BadAperture,
  BadInput,
  CollidingState,
  CollidingTrajectory,
  PoorFit,
  ZeroL,
  DegenerateCharge,
  ApexReached,
  NonFiniteState,
  StepUnderflow,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (tests, the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace monopole
