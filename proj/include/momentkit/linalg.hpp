#pragma once

// Dense complex linear algebra used throughout momentkit. Matrices are small
// (n up to a few dozen) so everything is eager and allocation-happy.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "momentkit/error.hpp"

namespace momentkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kRankDrop = 1e-10;
inline constexpr double kPhase = 1e-10;
}  // namespace tol

/// <x, y> = sum_i x_i conj(y_i), linear in the first slot.
inline Complex inner(const ComplexVector& x, const ComplexVector& y) { return y.dot(x); }

/// arg(z) with arg(0) := 0. Values with |z| <= zero_tol count as zero.
inline double arg_or_zero(Complex z, double zero_tol = 1e-14) {
  return std::abs(z) <= zero_tol ? 0.0 : std::arg(z);
}

inline Complex unit_phase(double angle) { return std::polar(1.0, angle); }

inline double max_asymmetry(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// A square complex matrix equal to its adjoint. The stored entries are the
/// exact hermitian part of the input, so the diagonal is real.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a, double tolerance = tol::kHermitian) {
    if (a.rows() != a.cols()) throw InvalidArgument("hermitian matrix must be square");
    if (!a.allFinite()) throw InvalidArgument("matrix has non-finite entries");
    const double asym = max_asymmetry(a);
    if (asym > tolerance) throw NotHermitian(asym);
    m_ = symmetrize(a);
  }

  /// Skip the tolerance check; for matrices hermitian by construction.
  static HermitianMatrix from_hermitian_part(const ComplexMatrix& a) {
    HermitianMatrix h;
    h.m_ = symmetrize(a);
    return h;
  }

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  HermitianMatrix() = default;

  static ComplexMatrix symmetrize(const ComplexMatrix& a) {
    ComplexMatrix h = 0.5 * (a + a.adjoint());
    for (Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
    return h;
  }

  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;      ///< ascending
  ComplexMatrix eigenvectors;  ///< orthonormal columns, matched to eigenvalues
};

/// Rotate v so that its first component with modulus above `threshold` is
/// real and positive.
inline void normalize_phase(Eigen::Ref<ComplexVector> v, double threshold = tol::kPhase) {
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > threshold) {
      v *= std::conj(v(i)) / m;
      v(i) = Complex(v(i).real(), 0.0);
      return;
    }
  }
}

namespace detail {

// Eigen reads the lower triangle only.
inline EigenDecomposition eig_selfadjoint(const ComplexMatrix& a) {
  EigenDecomposition out;
  if (a.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalInconsistency("eigensolver failed");
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  for (Index c = 0; c < out.eigenvectors.cols(); ++c) normalize_phase(out.eigenvectors.col(c));
  return out;
}

inline RealVector eigenvalues_selfadjoint(const ComplexMatrix& a) {
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Orthonormal basis of the span of the eigenvectors whose eigenvalue passes `keep`.
template <class Pred>
ComplexMatrix eigenspace(const ComplexMatrix& hermitian, Pred keep) {
  const EigenDecomposition e = eig_selfadjoint(hermitian);
  std::vector<Index> cols;
  for (Index i = 0; i < e.eigenvalues.size(); ++i)
    if (keep(e.eigenvalues(i))) cols.push_back(i);
  ComplexMatrix q(hermitian.rows(), static_cast<Index>(cols.size()));
  for (Index c = 0; c < q.cols(); ++c) q.col(c) = e.eigenvectors.col(cols[c]);
  return q;
}

}  // namespace detail

/// Eigendecomposition with ascending eigenvalues and eigenvectors whose first
/// non-negligible component is real positive.
inline EigenDecomposition hermitian_eig(const HermitianMatrix& a) {
  return detail::eig_selfadjoint(a.matrix());
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. A vector whose
/// residual falls below 1e-10 of its own norm is dropped.
inline ComplexMatrix orthonormalize(std::span<const ComplexVector> vectors) {
  if (vectors.empty()) return ComplexMatrix(0, 0);
  const Index n = vectors.front().size();
  std::vector<ComplexVector> basis;
  for (const ComplexVector& v : vectors) {
    if (v.size() != n) throw InvalidArgument("vectors have inconsistent dimensions");
    if (!v.allFinite()) throw InvalidArgument("vector has non-finite entries");
    const double input_norm = v.norm();
    if (input_norm == 0.0) continue;
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexVector& q : basis) w -= q.dot(w) * q;
    const double residual = w.norm();
    if (residual < tol::kRankDrop * input_norm) continue;
    basis.push_back(w / residual);
  }
  ComplexMatrix q(n, static_cast<Index>(basis.size()));
  for (Index c = 0; c < q.cols(); ++c) q.col(c) = basis[c];
  return q;
}

inline ComplexMatrix orthonormalize(const ComplexMatrix& columns) {
  std::vector<ComplexVector> vs;
  vs.reserve(columns.cols());
  for (Index c = 0; c < columns.cols(); ++c) vs.emplace_back(columns.col(c));
  if (vs.empty()) return ComplexMatrix(columns.rows(), 0);
  return orthonormalize(std::span<const ComplexVector>(vs));
}

inline double orthonormality_defect(const ComplexMatrix& q) {
  if (q.cols() == 0) return 0.0;
  return (q.adjoint() * q - ComplexMatrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

/// Orthogonal projector Q Q* onto the column span of an orthonormal Q.
inline HermitianMatrix projector(const ComplexMatrix& q) {
  const double defect = orthonormality_defect(q);
  if (defect > tol::kOrthonormal)
    throw InvalidArgument("basis is not orthonormal: max |Q*Q - I| = " + std::to_string(defect));
  return HermitianMatrix::from_hermitian_part(q * q.adjoint());
}

/// Largest singular value.
inline double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

/// max |eigenvalue|, cheaper than an SVD for hermitian input.
inline double spectral_norm(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const RealVector ev = detail::eigenvalues_selfadjoint(a.matrix());
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

inline ComplexMatrix diagonal_matrix(const RealVector& d) {
  return d.cast<Complex>().asDiagonal();
}

}  // namespace momentkit
