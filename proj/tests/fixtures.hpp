#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "momentkit/momentkit.hpp"

namespace fixtures {

using namespace momentkit;

inline const double kPi = std::numbers::pi;

inline ComplexVector cvec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

inline RealVector rvec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Subspace span_of(std::vector<ComplexVector> vs) {
  return Subspace::from_spanning(std::span<const ComplexVector>(vs));
}

/// V = span{(1,1,0), (0,1,1)}.
inline Subspace example_v() { return span_of({cvec({1, 1, 0}), cvec({0, 1, 1})}); }

/// W = span{(-1, e^{i pi/4}, 0), (0, e^{i pi/3}, e^{i pi/6})}.
inline Subspace example_w() {
  return span_of({cvec({-1, std::polar(1.0, kPi / 4), 0}),
                  cvec({0, std::polar(1.0, kPi / 3), std::polar(1.0, kPi / 6)})});
}

inline Subspace line(const ComplexVector& x) { return span_of({x}); }

inline Subspace coordinate_line(Index n, Index j) { return line(ComplexVector::Unit(n, j)); }

inline ComplexMatrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex(re, im);
    }
  return m;
}

inline Subspace random_subspace(Index n, Index r, std::mt19937_64& rng) {
  return Subspace::from_spanning(gaussian(n, r, rng));
}

inline ComplexMatrix random_unitary(Index n, std::mt19937_64& rng) {
  return orthonormalize(gaussian(n, n, rng));
}

inline ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexVector random_unit(Index n, std::mt19937_64& rng) {
  ComplexVector v = gaussian(n, 1, rng).col(0);
  return v / v.norm();
}

/// Lines spanned by x = (a + ib)/sqrt2 and conj(x) for real orthonormal a, b.
/// They are orthogonal and both moments equal {|x|^2}.
inline std::pair<Subspace, Subspace> conjugate_pair_lines(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealMatrix ab(n, 2);
  for (Index i = 0; i < n; ++i) {
    ab(i, 0) = g(rng);
    ab(i, 1) = g(rng);
  }
  Eigen::HouseholderQR<RealMatrix> qr(ab);
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, 2);
  ComplexVector x(n);
  for (Index i = 0; i < n; ++i) x(i) = Complex(q(i, 0), q(i, 1)) / std::sqrt(2.0);
  return {line(x), line(x.conjugate())};
}

inline double max_abs(const RealVector& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace fixtures
