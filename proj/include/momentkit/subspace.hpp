#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "momentkit/linalg.hpp"
#include "momentkit/moment_point.hpp"

namespace momentkit {

/// A nonzero subspace S of C^n, stored as an orthonormal basis Q (n x r)
/// together with its projector P = QQ*. Immutable after construction.
class Subspace {
 public:
  static Subspace from_spanning(std::span<const ComplexVector> vectors) {
    if (vectors.empty()) throw InvalidArgument("no spanning vectors given");
    ComplexMatrix q = orthonormalize(vectors);
    if (q.cols() == 0) throw InvalidArgument("spanning vectors are all zero");
    return Subspace(std::move(q));
  }

  static Subspace from_spanning(const ComplexMatrix& columns) {
    ComplexMatrix q = orthonormalize(columns);
    if (q.cols() == 0) throw InvalidArgument("spanning vectors are all zero");
    return Subspace(std::move(q));
  }

  /// Adopt an already orthonormal basis.
  static Subspace from_orthonormal(ComplexMatrix q) {
    if (q.cols() == 0) throw InvalidArgument("basis has no columns");
    const double defect = orthonormality_defect(q);
    if (defect > tol::kOrthonormal)
      throw InvalidArgument("basis is not orthonormal: max |Q*Q - I| = " +
                            std::to_string(defect));
    return Subspace(std::move(q));
  }

  static Subspace whole(Index n) {
    if (n < 1) throw InvalidArgument("ambient dimension must be positive");
    return Subspace(ComplexMatrix::Identity(n, n));
  }

  Index ambient_dim() const noexcept { return q_.rows(); }
  Index dim() const noexcept { return q_.cols(); }
  bool is_whole_space() const noexcept { return q_.cols() == q_.rows(); }

  const ComplexMatrix& basis() const noexcept { return q_; }
  const ComplexMatrix& projector() const noexcept { return p_; }

  /// |P s - s|
  double residual(const ComplexVector& s) const { return (p_ * s - s).norm(); }

  Subspace orthogonal_complement() const {
    if (is_whole_space()) throw InvalidArgument("the whole space has no nonzero complement");
    return Subspace(detail::eigenspace(p_, [](double ev) { return ev < 0.5; }));
  }

 private:
  explicit Subspace(ComplexMatrix q) : q_(std::move(q)) {
    if (q_.cols() == q_.rows()) {
      p_ = ComplexMatrix::Identity(q_.rows(), q_.rows());
    } else {
      p_ = HermitianMatrix::from_hermitian_part(q_ * q_.adjoint()).matrix();
    }
  }

  ComplexMatrix q_;
  ComplexMatrix p_;
};

inline constexpr double kGenericTolerance = 1e-10;

struct GenericityReport {
  bool generic = true;
  std::vector<std::size_t> offending;  ///< coordinates j with P_jj <= tol
};

/// S is generic when every diagonal entry of its projector exceeds `tol`.
inline GenericityReport is_generic(const Subspace& s, double tol = kGenericTolerance) {
  GenericityReport r;
  const ComplexMatrix& p = s.projector();
  for (Index j = 0; j < p.rows(); ++j) {
    if (p(j, j).real() <= tol) {
      r.generic = false;
      r.offending.push_back(static_cast<std::size_t>(j));
    }
  }
  return r;
}

/// The principal standard vector v^j = P e_j / |P e_j|, with v^j_j > 0.
struct PrincipalVector {
  std::size_t index = 0;
  ComplexVector v;
  double top = 0.0;  ///< v^j_j = |P e_j|
};

inline PrincipalVector principal_vector(const Subspace& s, std::size_t j,
                                        double tol = kGenericTolerance) {
  const ComplexMatrix& p = s.projector();
  if (static_cast<Index>(j) >= p.rows())
    throw InvalidArgument("coordinate index " + std::to_string(j) + " out of range");
  const Index jj = static_cast<Index>(j);
  if (p(jj, jj).real() <= tol) throw NotGenericAtCoordinate(j);
  ComplexVector v = p.col(jj);
  v /= v.norm();
  // P_jj is real positive already; this only scrubs rounding in the phase.
  v *= std::conj(v(jj)) / std::abs(v(jj));
  const double top = v(jj).real();
  v(jj) = Complex(top, 0.0);
  return PrincipalVector{j, std::move(v), top};
}

/// All principal vectors that exist; missing coordinates are left empty.
inline std::vector<std::optional<PrincipalVector>> principal_vectors(
    const Subspace& s, double tol = kGenericTolerance) {
  std::vector<std::optional<PrincipalVector>> out(static_cast<std::size_t>(s.ambient_dim()));
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (s.projector()(static_cast<Index>(j), static_cast<Index>(j)).real() > tol)
      out[j] = principal_vector(s, j, tol);
  }
  return out;
}

/// c(m_S) = diag(P_S) / dim S, the barycentre of m_S.
inline MomentPoint centroid(const Subspace& s) {
  const RealVector d = s.projector().diagonal().real();
  return MomentPoint(d / static_cast<double>(s.dim()));
}

// ---------------------------------------------------------------------------
// Centroid algebra

enum class CentroidIdentity {
  kDirectSum,          ///< S perp V:  c(S+V) = (r c_S + k c_V)/(r+k)
  kComplement,         ///< c(S^perp) = (1 - r c_S)/(n-r)
  kDifference,         ///< D in S:   c(S - D) = (r c_S - d c_D)/(r-d)
  kSumWithSharedPart,  ///< D = S cap V, (S - D) perp (V - D)
};

inline const char* to_string(CentroidIdentity id) {
  switch (id) {
    case CentroidIdentity::kDirectSum: return "direct_sum";
    case CentroidIdentity::kComplement: return "complement";
    case CentroidIdentity::kDifference: return "difference";
    case CentroidIdentity::kSumWithSharedPart: return "sum_with_shared_part";
  }
  return "unknown";
}

struct CentroidIdentityResult {
  CentroidIdentity identity;
  bool applicable = false;
  std::string reason;     ///< why the hypothesis failed, when not applicable
  double residual = 0.0;  ///< max-norm residual, when applicable
};

struct CentroidAlgebraReport {
  std::vector<CentroidIdentityResult> results;

  double max_residual() const {
    double m = 0.0;
    for (const auto& r : results)
      if (r.applicable) m = std::max(m, r.residual);
    return m;
  }

  const CentroidIdentityResult& get(CentroidIdentity id) const {
    for (const auto& r : results)
      if (r.identity == id) return r;
    throw InvalidArgument("identity not in report");
  }
};

namespace detail {

inline Subspace span_union(const Subspace& a, const Subspace& b) {
  ComplexMatrix cols(a.ambient_dim(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return Subspace::from_spanning(cols);
}

/// Projector-norm test of S perp V.
inline double cross_gram(const Subspace& a, const Subspace& b) {
  return spectral_norm(ComplexMatrix(a.basis().adjoint() * b.basis()));
}

/// |(I - P_S) Q_D|: zero iff D is contained in S.
inline double containment_defect(const Subspace& inner_space, const Subspace& outer) {
  return spectral_norm(ComplexMatrix(inner_space.basis() - outer.projector() * inner_space.basis()));
}

/// Orthonormal basis of S cap V, from the eigenvalue-2 eigenspace of P_S + P_V.
inline std::optional<Subspace> intersection(const Subspace& a, const Subspace& b, double tol) {
  ComplexMatrix q = eigenspace(ComplexMatrix(a.projector() + b.projector()),
                               [tol](double ev) { return ev > 2.0 - tol; });
  if (q.cols() == 0) return std::nullopt;
  return Subspace::from_orthonormal(std::move(q));
}

/// S cap D^perp for D inside S, as the range of P_S - P_D.
inline Subspace difference(const Subspace& s, const Subspace& d) {
  return Subspace::from_orthonormal(
      eigenspace(ComplexMatrix(s.projector() - d.projector()), [](double ev) { return ev > 0.5; }));
}

inline double residual_inf(const RealVector& a, const RealVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Check the centroid identities that apply to the pair (S, V). Each identity
/// is evaluated only when its hypothesis holds within `tol`; otherwise the
/// result says which precondition failed.
inline CentroidAlgebraReport centroid_algebra_check(const Subspace& s, const Subspace& v,
                                                    double tol = 1e-10) {
  if (s.ambient_dim() != v.ambient_dim())
    throw InvalidArgument("subspaces live in different ambient dimensions");
  const double n = static_cast<double>(s.ambient_dim());
  const double r = static_cast<double>(s.dim());
  const double k = static_cast<double>(v.dim());
  const RealVector cs = centroid(s).coordinates();
  const RealVector cv = centroid(v).coordinates();
  CentroidAlgebraReport report;

  {
    CentroidIdentityResult res;
    res.identity = CentroidIdentity::kDirectSum;
    const double overlap = detail::cross_gram(s, v);
    if (overlap > tol) {
      res.reason = "S and V are not orthogonal (|Q_S* Q_V| = " + std::to_string(overlap) + ")";
    } else {
      res.applicable = true;
      const RealVector direct = centroid(detail::span_union(s, v)).coordinates();
      res.residual = detail::residual_inf(direct, (r * cs + k * cv) / (r + k));
    }
    report.results.push_back(res);
  }

  {
    CentroidIdentityResult res;
    res.identity = CentroidIdentity::kComplement;
    if (s.is_whole_space()) {
      res.reason = "S is the whole space";
    } else {
      res.applicable = true;
      const RealVector direct = centroid(s.orthogonal_complement()).coordinates();
      res.residual = detail::residual_inf(
          direct, (RealVector::Ones(s.ambient_dim()) - r * cs) / (n - r));
    }
    report.results.push_back(res);
  }

  {
    CentroidIdentityResult res;
    res.identity = CentroidIdentity::kDifference;
    // Either nesting direction is accepted; D is the smaller space.
    const bool v_in_s = v.dim() < s.dim() && detail::containment_defect(v, s) <= tol;
    const bool s_in_v = s.dim() < v.dim() && detail::containment_defect(s, v) <= tol;
    if (!v_in_s && !s_in_v) {
      res.reason = "neither subspace is properly contained in the other";
    } else {
      res.applicable = true;
      const Subspace& outer = v_in_s ? s : v;
      const Subspace& inner_space = v_in_s ? v : s;
      const double ro = static_cast<double>(outer.dim());
      const double d = static_cast<double>(inner_space.dim());
      const RealVector direct = centroid(detail::difference(outer, inner_space)).coordinates();
      res.residual = detail::residual_inf(
          direct, (ro * centroid(outer).coordinates() - d * centroid(inner_space).coordinates()) /
                      (ro - d));
    }
    report.results.push_back(res);
  }

  {
    CentroidIdentityResult res;
    res.identity = CentroidIdentity::kSumWithSharedPart;
    const std::optional<Subspace> shared = detail::intersection(s, v, 1e-10);
    // Residual parts S - D and V - D, as projectors.
    const ComplexMatrix pd = shared ? shared->projector()
                                    : ComplexMatrix::Zero(s.ambient_dim(), s.ambient_dim());
    const double coupling =
        spectral_norm(ComplexMatrix((s.projector() - pd) * (v.projector() - pd)));
    if (coupling > tol) {
      res.reason = "(S - D) and (V - D) are not orthogonal (|P P| = " + std::to_string(coupling) +
                   ")";
    } else {
      res.applicable = true;
      const double d = shared ? static_cast<double>(shared->dim()) : 0.0;
      RealVector formula = r * cs + k * cv;
      if (shared) formula -= d * centroid(*shared).coordinates();
      formula /= (r + k - d);
      res.residual = detail::residual_inf(centroid(detail::span_union(s, v)).coordinates(), formula);
    }
    report.results.push_back(res);
  }

  return report;
}

}  // namespace momentkit
