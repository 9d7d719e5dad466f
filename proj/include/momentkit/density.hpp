#pragma once

#include <cmath>
#include <string>

#include "momentkit/linalg.hpp"

namespace momentkit {

/// A state: hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  static constexpr double kPsdSlack = 1e-10;
  static constexpr double kTraceSlack = 1e-10;

  explicit DensityMatrix(const ComplexMatrix& rho) : DensityMatrix(HermitianMatrix(rho)) {}

  explicit DensityMatrix(const HermitianMatrix& rho) : rho_(rho.matrix()) {
    if (rho_.rows() == 0) throw InvalidDensity("density matrix must be non-empty");
    const double trace = rho_.trace().real();
    if (std::abs(trace - 1.0) > kTraceSlack)
      throw InvalidDensity("density matrix trace is " + std::to_string(trace) + ", not 1");
    const double min_ev = detail::eigenvalues_selfadjoint(rho_)(0);
    if (min_ev < -kPsdSlack)
      throw InvalidDensity("density matrix is not positive semidefinite (min eigenvalue " +
                           std::to_string(min_ev) + ")");
  }

  /// x x* for a unit vector x.
  static DensityMatrix pure(const ComplexVector& x) {
    if (std::abs(x.norm() - 1.0) > kTraceSlack)
      throw InvalidDensity("pure state needs a unit vector");
    return DensityMatrix(HermitianMatrix::from_hermitian_part(x * x.adjoint()));
  }

  static DensityMatrix maximally_mixed(Index n) {
    return DensityMatrix(HermitianMatrix::from_hermitian_part(
        ComplexMatrix::Identity(n, n) / static_cast<double>(n)));
  }

  Index dim() const noexcept { return rho_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  ComplexMatrix rho_;
};

}  // namespace momentkit
