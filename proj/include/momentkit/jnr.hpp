#pragma once

// The joint numerical range W = W(P E_1 P, ..., P E_n P) of the compressions
// of the coordinate projections E_i = e_i e_i*. W is never stored; it is
// accessed through Delta, its support function and sampled points.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "momentkit/density.hpp"
#include "momentkit/moment.hpp"
#include "momentkit/parallel.hpp"
#include "momentkit/projection.hpp"

namespace momentkit {

struct JNRPoint {
  RealVector x;           ///< Delta(witness)
  DensityMatrix witness;  ///< n x n state
};

/// Delta(rho) = diag(P rho P), i.e. x_i = tr(P E_i P rho).
inline JNRPoint delta_map(const Subspace& s, const DensityMatrix& rho) {
  if (rho.dim() != s.ambient_dim()) throw InvalidDensity("state has the wrong dimension");
  const ComplexMatrix& p = s.projector();
  RealVector x = (p * rho.matrix() * p).diagonal().real();
  return JNRPoint{std::move(x), rho};
}

struct JNRSupport {
  double value = 0.0;
  DensityMatrix witness;  ///< rank one, attains the value
};

/// h_W(c) = lambda_max(P diag(c) P), computed on the full n x n compression.
inline JNRSupport jnr_support(const Subspace& s, const RealVector& c) {
  if (c.size() != s.ambient_dim()) throw InvalidArgument("direction has the wrong dimension");
  if (!c.allFinite()) throw InvalidArgument("direction has non-finite entries");
  const ComplexMatrix& p = s.projector();
  const EigenDecomposition e = detail::eig_selfadjoint(ComplexMatrix(p * diagonal_matrix(c) * p));
  const Index top = e.eigenvalues.size() - 1;
  ComplexVector u = e.eigenvectors.col(top);
  u /= u.norm();
  return JNRSupport{e.eigenvalues(top), DensityMatrix::pure(u)};
}

/// Same value from the r x r compression Q* diag(c) Q; the zero eigenvalue
/// contributed by S^perp is added back when S is proper.
inline double jnr_support_reduced(const Subspace& s, const RealVector& c) {
  const double top = support_moment(s, c).value;
  return s.is_whole_space() ? top : std::max(top, 0.0);
}

/// Support function of W(P u_1 u_1* P, ..., P u_n u_n* P) for an arbitrary
/// orthonormal basis u_i (the columns of `basis`).
inline double jnr_support_in_basis(const Subspace& s, const ComplexMatrix& basis,
                                   const RealVector& c) {
  if (basis.rows() != s.ambient_dim() || basis.cols() != c.size())
    throw InvalidArgument("basis and direction dimensions disagree");
  const ComplexMatrix& p = s.projector();
  const ComplexMatrix a = p * basis * diagonal_matrix(c) * basis.adjoint() * p;
  const RealVector ev = detail::eigenvalues_selfadjoint(HermitianMatrix::from_hermitian_part(a).matrix());
  return ev(ev.size() - 1);
}

/// Boundary points Delta(witness) for each direction. Parallel over
/// directions; the output order follows the input.
inline std::vector<JNRPoint> jnr_boundary(const Subspace& s, const std::vector<RealVector>& dirs,
                                          unsigned threads = thread_budget()) {
  for (const RealVector& c : dirs) {
    if (c.size() != s.ambient_dim()) throw InvalidArgument("direction has the wrong dimension");
    if (!(c.norm() > 0.0)) throw InvalidArgument("direction must be nonzero");
  }
  std::vector<std::optional<JNRPoint>> slots(dirs.size());
  parallel_for(dirs.size(), threads, [&](std::size_t i) {
    slots[i] = delta_map(s, jnr_support(s, dirs[i]).witness);
  });
  std::vector<JNRPoint> out;
  out.reserve(dirs.size());
  for (auto& p : slots) out.push_back(std::move(*p));
  return out;
}

/// Random mixed state: G G* / tr(G G*) with G a complex gaussian n x n matrix.
inline DensityMatrix random_density(Index n, std::mt19937_64& rng, Index rank = -1) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index k = rank < 1 ? n : rank;
  ComplexMatrix g(n, k);
  for (Index c = 0; c < k; ++c)
    for (Index i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, c) = Complex(re, im);
    }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix::from_hermitian_part(rho));
}

/// Points Delta(x x*) for random unit x of C^n: samples of the classical
/// range W_class. Nothing is claimed about its convexity.
inline std::vector<RealVector> sample_classical_jnr(const Subspace& s, std::size_t count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RealVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(delta_map(s, random_density(s.ambient_dim(), rng, 1)).x);
  return out;
}

inline constexpr double kSliceTolerance = 1e-9;
inline constexpr double kMomentMemberTolerance = 1e-6;

struct SliceVerdict {
  RealVector delta;
  double sum = 0.0;
  bool on_slice = false;       ///< |sum - 1| <= 1e-9
  double distance = 0.0;       ///< distance from delta to m_S (projection upper bound)
  bool moment_member = false;  ///< distance <= 1e-6
  bool consistent = true;      ///< on_slice implies moment_member
};

/// Check that a point of W on the hyperplane sum x_i = 1 lies in m_S.
inline SliceVerdict hyperplane_slice_check(const Subspace& s, const DensityMatrix& rho,
                                           const ProjectionOptions& opt = {}) {
  SliceVerdict v;
  v.delta = delta_map(s, rho).x;
  v.sum = v.delta.sum();
  v.on_slice = std::abs(v.sum - 1.0) <= kSliceTolerance;
  const ProjectionResult proj = project_onto_moment(s, v.delta, opt);
  v.distance = proj.distance;
  v.moment_member = proj.distance <= kMomentMemberTolerance;
  v.consistent = !v.on_slice || v.moment_member;
  return v;
}

struct ConeVerdict {
  bool member = false;
  double scaling = 0.0;   ///< sum x_i; x / scaling is the candidate moment point
  double distance = 0.0;  ///< distance from x / scaling to m_S
};

/// x in cone(W) = cone(m_S), tested through moment membership of x / sum(x).
inline ConeVerdict cone_membership(const Subspace& s, const RealVector& x,
                                   const ProjectionOptions& opt = {}) {
  if (x.size() != s.ambient_dim()) throw InvalidArgument("point has the wrong dimension");
  if (!x.allFinite()) throw InvalidArgument("point has non-finite coordinates");
  if (x.minCoeff() < 0.0)
    throw InvalidArgument("cone membership needs a nonnegative vector (min coordinate " +
                          std::to_string(x.minCoeff()) + ")");
  ConeVerdict v;
  v.scaling = x.sum();
  if (v.scaling == 0.0) {
    v.member = true;
    return v;
  }
  const ProjectionResult proj = project_onto_moment(s, x / v.scaling, opt);
  v.distance = proj.distance;
  v.member = proj.distance <= kMomentMemberTolerance;
  return v;
}

/// max over random states of |Delta(rho) - D^2 Delta'(rho)|, where Delta' uses
/// the rank-one tuple v^i v^i* and D = diag(v^i_i).
inline double scaling_relation_check(const Subspace& s, std::size_t samples = 200,
                                     std::uint64_t seed = 0x5ca1e) {
  const GenericityReport g = is_generic(s);
  if (!g.generic) throw NotGeneric(g.offending);
  const Index n = s.ambient_dim();
  std::vector<PrincipalVector> pv;
  for (Index i = 0; i < n; ++i) pv.push_back(principal_vector(s, static_cast<std::size_t>(i)));
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < samples; ++t) {
    const DensityMatrix rho = random_density(n, rng);
    const RealVector d = delta_map(s, rho).x;
    for (Index i = 0; i < n; ++i) {
      const PrincipalVector& v = pv[static_cast<std::size_t>(i)];
      const double rank_one = v.v.dot(rho.matrix() * v.v).real();
      worst = std::max(worst, std::abs(d(i) - v.top * v.top * rank_one));
    }
  }
  return worst;
}

}  // namespace momentkit
