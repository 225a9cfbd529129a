#pragma once

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "monopole/verify.hpp"

namespace test_support {

using monopole::verify::Rng;

inline double max_abs(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

template <class A, class B>
double diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return max_abs((a - b).eval());
}

template <class F>
monopole::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const monopole::Error& e) {
    return e.kind();
  }
  FAIL("expected monopole::Error");
  return monopole::ErrorKind::BadInput;
}

}  // namespace test_support
