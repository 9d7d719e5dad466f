#pragma once

// Euclidean projection of a point onto m_S, the membership oracle used by the
// hyperplane-slice and cone checks.

#include "momentkit/density.hpp"
#include "momentkit/frank_wolfe.hpp"
#include "momentkit/moment.hpp"

namespace momentkit {

struct ProjectionOptions {
  double tol = 1e-7;
  std::size_t max_iter = 50000;
  fw::Variant variant = fw::Variant::kFullyCorrective;
};

struct ProjectionResult {
  double distance = 0.0;     ///< |closest - p|, an upper bound on dist(p, m_S)
  double lower_bound = 0.0;  ///< certified lower bound on dist(p, m_S)
  RealVector closest;        ///< diag(witness), a point of m_S
  DensityMatrix witness;     ///< n x n state with range in S
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

/// Density matrix on C^r (coefficient space of the basis Q).
using CoefficientState = ComplexMatrix;

/// argmin over m_S of <g, y>: the bottom eigenvector of Q* diag(g) Q.
inline fw::Atom<CoefficientState> moment_atom(const ComplexMatrix& q, const RealVector& g,
                                              bool maximize = false) {
  const EigenDecomposition e =
      eig_selfadjoint(ComplexMatrix(q.adjoint() * diagonal_matrix(g) * q));
  const Index col = maximize ? e.eigenvalues.size() - 1 : 0;
  const ComplexVector u = e.eigenvectors.col(col);
  return {RealVector((q * u).cwiseAbs2()), u * u.adjoint()};
}

inline CoefficientState combine(const std::vector<fw::Atom<CoefficientState>>& atoms,
                                const std::vector<double>& weights, Index r) {
  CoefficientState m = CoefficientState::Zero(r, r);
  for (std::size_t a = 0; a < atoms.size(); ++a) m += weights[a] * atoms[a].payload;
  return m;
}

inline DensityMatrix lift_state(const ComplexMatrix& q, const CoefficientState& m) {
  ComplexMatrix y = q * m * q.adjoint();
  y /= y.trace().real();
  return DensityMatrix(HermitianMatrix::from_hermitian_part(y));
}

}  // namespace detail

/// Closest point of m_S to p, with a witness state Y in D_S.
inline ProjectionResult project_onto_moment(const Subspace& s, const RealVector& p,
                                            const ProjectionOptions& opt = {}) {
  if (p.size() != s.ambient_dim()) throw InvalidArgument("point has the wrong dimension");
  if (!p.allFinite()) throw InvalidArgument("point has non-finite coordinates");
  const ComplexMatrix& q = s.basis();
  const Index r = s.dim();

  fw::Atom<detail::CoefficientState> start{centroid(s).coordinates(),
                                           ComplexMatrix::Identity(r, r) / static_cast<double>(r)};
  auto oracle = [&q](const RealVector& g) { return detail::moment_atom(q, g); };
  const auto res = fw::minimize_distance<detail::CoefficientState>(
      oracle, p, std::move(start), fw::Options{opt.tol, opt.max_iter, opt.variant, false});

  const detail::CoefficientState m = detail::combine(res.atoms, res.weights, r);
  DensityMatrix witness = detail::lift_state(q, m);
  RealVector closest = witness.matrix().diagonal().real();
  return ProjectionResult{(closest - p).norm(), res.lower, std::move(closest), std::move(witness),
                          res.iterations, res.converged};
}

}  // namespace momentkit
