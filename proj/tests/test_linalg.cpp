#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace momentkit;
using namespace fixtures;

namespace {

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

}  // namespace

TEST(Hermitian, RejectsAsymmetryAndReportsIt) {
  ComplexMatrix a(2, 2);
  a << 1, 2, 3, 4;
  try {
    HermitianMatrix h(a);
    FAIL() << "accepted a non-hermitian matrix";
  } catch (const NotHermitian& e) {
    EXPECT_DOUBLE_EQ(e.max_asymmetry(), 1.0);
  }
}

TEST(Hermitian, AcceptsWithinToleranceAndCleansDiagonal) {
  ComplexMatrix a = pauli_y();
  a(0, 1) += Complex(5e-13, 0);
  a(0, 0) = Complex(1.0, 1e-13);
  const HermitianMatrix h(a);
  EXPECT_EQ(h.matrix()(0, 0).imag(), 0.0);
  EXPECT_EQ(max_asymmetry(h.matrix()), 0.0);
}

TEST(Hermitian, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), InvalidArgument);
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianMatrix{a}, InvalidArgument);
}

TEST(HermitianEig, Identity) {
  const auto e = hermitian_eig(HermitianMatrix(ComplexMatrix::Identity(3, 3)));
  EXPECT_LE(max_abs(e.eigenvalues - RealVector::Ones(3)), 1e-15);
}

TEST(HermitianEig, PauliY) {
  const auto e = hermitian_eig(HermitianMatrix(pauli_y()));
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(HermitianEig, ExampleProjectorHasSpectrum011) {
  RealMatrix p(3, 3);
  p << 2, 1, -1, 1, 2, 1, -1, 1, 2;
  p /= 3.0;
  const ComplexMatrix pc = p.cast<Complex>();
  EXPECT_LE((pc * pc - pc).cwiseAbs().maxCoeff(), 1e-15);
  const auto e = hermitian_eig(HermitianMatrix(pc));
  EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(2), 1.0, 1e-14);
}

TEST(HermitianEig, ReconstructsAndShiftsRandomMatrices) {
  std::mt19937_64 rng(11);
  for (Index n = 1; n <= 8; ++n) {
    const HermitianMatrix a(random_hermitian(n, rng));
    const auto e = hermitian_eig(a);
    const double scale = std::max(1.0, spectral_norm(a));
    const ComplexMatrix rebuilt =
        e.eigenvectors * diagonal_matrix(e.eigenvalues) * e.eigenvectors.adjoint();
    EXPECT_LE((rebuilt - a.matrix()).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_LE(orthonormality_defect(e.eigenvectors), 1e-10);
    for (Index i = 0; i < n; ++i) {
      EXPECT_LE((a.matrix() * e.eigenvectors.col(i) - e.eigenvalues(i) * e.eigenvectors.col(i)).norm(),
                1e-10 * scale);
      if (i > 0) {
        EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
      }
    }
    const double c = 2.5;
    const auto shifted = hermitian_eig(
        HermitianMatrix(ComplexMatrix(a.matrix() + c * ComplexMatrix::Identity(n, n))));
    EXPECT_LE(max_abs(shifted.eigenvalues - e.eigenvalues - RealVector::Constant(n, c)), 1e-10);
  }
}

TEST(HermitianEig, EigenvectorPhaseIsDeterministic) {
  std::mt19937_64 rng(5);
  const HermitianMatrix a(random_hermitian(5, rng));
  const auto e1 = hermitian_eig(a);
  const auto e2 = hermitian_eig(a);
  EXPECT_EQ(e1.eigenvectors, e2.eigenvectors);
  for (Index c = 0; c < 5; ++c) {
    const ComplexVector v = e1.eigenvectors.col(c);
    Index first = 0;
    while (std::abs(v(first)) <= tol::kPhase) ++first;
    EXPECT_GT(v(first).real(), 0.0);
    EXPECT_EQ(v(first).imag(), 0.0);
  }
}

TEST(Orthonormalize, KeepsOrthonormalPair) {
  std::vector<ComplexVector> vs{cvec({1, 0}), cvec({0, 1})};
  const ComplexMatrix q = orthonormalize(std::span<const ComplexVector>(vs));
  EXPECT_EQ(q, ComplexMatrix::Identity(2, 2));
}

TEST(Orthonormalize, ExampleSpanningPair) {
  std::vector<ComplexVector> vs{cvec({1, 1, 0}), cvec({0, 1, 1})};
  const ComplexMatrix q = orthonormalize(std::span<const ComplexVector>(vs));
  ASSERT_EQ(q.cols(), 2);
  EXPECT_LE(orthonormality_defect(q), 1e-15);
  for (const auto& v : vs) EXPECT_LE((q * (q.adjoint() * v) - v).norm(), 1e-14);
}

TEST(Orthonormalize, DropsDependentAndZeroVectors) {
  std::vector<ComplexVector> vs{cvec({1, 0}), cvec({2, 0})};
  const ComplexMatrix q = orthonormalize(std::span<const ComplexVector>(vs));
  ASSERT_EQ(q.cols(), 1);
  EXPECT_LE((q.col(0) - cvec({1, 0})).norm(), 1e-15);

  std::vector<ComplexVector> zeros{cvec({0, 0}), cvec({0, 0})};
  EXPECT_EQ(orthonormalize(std::span<const ComplexVector>(zeros)).cols(), 0);
  EXPECT_EQ(orthonormalize(std::span<const ComplexVector>{}).size(), 0);
}

TEST(Orthonormalize, RejectsMixedDimensions) {
  std::vector<ComplexVector> vs{cvec({1, 0}), cvec({1, 0, 0})};
  EXPECT_THROW(orthonormalize(std::span<const ComplexVector>(vs)), InvalidArgument);
}

TEST(Projector, KnownCases) {
  EXPECT_EQ(projector(ComplexMatrix::Identity(4, 4)).matrix(), ComplexMatrix::Identity(4, 4));
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_EQ(projector(e1).matrix(), expected);
  EXPECT_THROW(projector(ComplexMatrix::Constant(2, 1, 1.0)), InvalidArgument);
}

TEST(Projector, IdempotentAndHermitianForRandomBases) {
  std::mt19937_64 rng(3);
  for (Index n = 2; n <= 7; ++n) {
    for (Index r = 1; r <= n; ++r) {
      const ComplexMatrix q = orthonormalize(gaussian(n, r, rng));
      const ComplexMatrix p = projector(q).matrix();
      EXPECT_LE((p * p - p).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_EQ(max_asymmetry(p), 0.0);
      EXPECT_NEAR(p.trace().real(), static_cast<double>(r), 1e-10);
    }
  }
}

TEST(SpectralNorm, KnownValues) {
  EXPECT_EQ(spectral_norm(ComplexMatrix::Zero(3, 3)), 0.0);
  EXPECT_NEAR(spectral_norm(pauli_y()), 1.0, 1e-15);
  EXPECT_NEAR(spectral_norm(diagonal_matrix(rvec({3, -5}))), 5.0, 1e-15);
  EXPECT_NEAR(spectral_norm(HermitianMatrix(diagonal_matrix(rvec({3, -5})))), 5.0, 1e-15);
}

TEST(SpectralNorm, UnitarilyInvariant) {
  std::mt19937_64 rng(17);
  for (Index n = 2; n <= 6; ++n) {
    const ComplexMatrix a = gaussian(n, n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    EXPECT_NEAR(spectral_norm(ComplexMatrix(u * a * u.adjoint())), spectral_norm(a), 1e-10);
  }
}

TEST(SpectralNorm, MatchesPowerIterationOracle) {
  std::mt19937_64 rng(23);
  const ComplexMatrix a = gaussian(5, 4, rng);
  const ComplexMatrix g = a.adjoint() * a;
  ComplexVector x = ComplexVector::Ones(4);
  for (int i = 0; i < 2000; ++i) x = (g * x).normalized();
  EXPECT_NEAR(spectral_norm(a), std::sqrt((g * x).norm()), 1e-9);
}

TEST(Inner, LinearInFirstSlot) {
  const ComplexVector x = cvec({Complex(0, 1), 2});
  const ComplexVector y = cvec({1, Complex(0, 1)});
  EXPECT_EQ(inner(x, y), Complex(0, 1) * 1.0 + 2.0 * Complex(0, -1));
  EXPECT_EQ(inner(Complex(0, 1) * x, y), Complex(0, 1) * inner(x, y));
  EXPECT_EQ(arg_or_zero(Complex(0, 0)), 0.0);
  EXPECT_NEAR(arg_or_zero(Complex(0, 2)), kPi / 2, 1e-15);
}
