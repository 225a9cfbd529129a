#include "monopole/charts.hpp"

namespace monopole::charts {

namespace {

void require_field(const Quaternion& q, HopfField field) {
  if (field == HopfField::complex && !q.is_complex()) {
    throw Error(ErrorKind::BadInput, "complex Hopf map given a non-complex quaternion");
  }
}

}  // namespace

geom::VecX hopf_project(const Quaternion& z1, const Quaternion& z2, HopfField field) {
  require_field(z1, field);
  require_field(z2, field);
  const double n1 = z1.norm2();
  const double n2 = z2.norm2();
  const double rho = std::sqrt(n1 + n2);
  if (rho < kTol.zero_vector) throw Error(ErrorKind::ZeroVector, "hopf_project of (0, 0)");
  const Quaternion w = z1 * z2.conj();
  if (field == HopfField::complex) {
    geom::VecX out(3);
    out << 2.0 * w.w(), 2.0 * w.x(), n1 - n2;
    return out / rho;
  }
  geom::VecX out(5);
  out << 2.0 * w.w(), 2.0 * w.x(), 2.0 * w.y(), 2.0 * w.z(), n1 - n2;
  return out / rho;
}

Trivialization local_trivialization(const Quaternion& z1, const Quaternion& z2, int chart_index,
                                    HopfField field) {
  if (chart_index != 1 && chart_index != 2) {
    throw Error(ErrorKind::BadInput, "chart index must be 1 or 2");
  }
  const Quaternion& zi = chart_index == 1 ? z1 : z2;
  const double n = zi.norm();
  if (n < kTol.zero_vector) throw Error(ErrorKind::OutsideChart, "z_i vanishes outside U_i");
  return {hopf_project(z1, z2, field), (1.0 / n) * zi};
}

}  // namespace monopole::charts
