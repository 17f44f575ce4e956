#pragma once

#include <complex>

namespace qgrav {

/// Bloch vector with the convention rho = (I + r . sigma) / 2.
struct BlochVector {
  double r_x = 0.0;
  double r_y = 0.0;
  double r_z = 0.0;

  double norm_sq() const { return r_x * r_x + r_y * r_y + r_z * r_z; }
  double transverse() const;
};

/// 2x2 Hermitian unit-trace qubit state; rho10 is conj(rho01).
struct QubitDensityMatrix {
  double rho00 = 1.0;
  double rho11 = 0.0;
  std::complex<double> rho01{0.0, 0.0};

  BlochVector bloch() const;
  double purity() const;
};

/// Trace distance (1/2)||a - b||_1.
double trace_distance(const QubitDensityMatrix& a, const QubitDensityMatrix& b);

}  // namespace qgrav
