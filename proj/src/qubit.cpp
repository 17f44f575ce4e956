#include "qgrav/qubit.hpp"

#include <cmath>

namespace qgrav {

double BlochVector::transverse() const { return std::hypot(r_x, r_y); }

BlochVector QubitDensityMatrix::bloch() const {
  return {2.0 * rho01.real(), -2.0 * rho01.imag(), rho00 - rho11};
}

double QubitDensityMatrix::purity() const {
  return rho00 * rho00 + rho11 * rho11 + 2.0 * std::norm(rho01);
}

double trace_distance(const QubitDensityMatrix& a, const QubitDensityMatrix& b) {
  // Difference is traceless Hermitian with eigenvalues +-sqrt(d^2 + |c|^2).
  const double d = 0.5 * ((a.rho00 - b.rho00) - (a.rho11 - b.rho11));
  return std::sqrt(d * d + std::norm(a.rho01 - b.rho01));
}

}  // namespace qgrav
