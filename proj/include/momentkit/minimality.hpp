#pragma once

// Moment intersection, minimality of hermitian matrices in the spectral
// norm with respect to real diagonal perturbations, and Hausdorff estimates.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "momentkit/density.hpp"
#include "momentkit/frank_wolfe.hpp"
#include "momentkit/parallel.hpp"
#include "momentkit/projection.hpp"

namespace momentkit {

enum class IntersectionStatus { kIntersect, kDisjoint, kIndeterminate };

inline const char* to_string(IntersectionStatus s) {
  switch (s) {
    case IntersectionStatus::kIntersect: return "INTERSECT";
    case IntersectionStatus::kDisjoint: return "DISJOINT";
    case IntersectionStatus::kIndeterminate: return "INDETERMINATE";
  }
  return "UNKNOWN";
}

inline constexpr double kSeparationMargin = 1e-9;
inline constexpr double kOrthogonalPairTolerance = 1e-10;

struct IntersectionOptions {
  double tol = 1e-7;
  std::size_t max_iter = 50000;
  fw::Variant variant = fw::Variant::kFullyCorrective;
};

struct IntersectionCertificate {
  IntersectionStatus status = IntersectionStatus::kIndeterminate;
  std::optional<DensityMatrix> witness_y;  ///< state in D_V, set when INTERSECT
  std::optional<DensityMatrix> witness_x;  ///< state in D_W, set when INTERSECT
  RealVector common;     ///< diag(witness_y); the common point when INTERSECT
  RealVector other;      ///< diag(witness_x)
  RealVector direction;  ///< unit u, set when DISJOINT
  double margin = 0.0;   ///< lambda_min(Q_V* D_u Q_V) - lambda_max(Q_W* D_u Q_W)
  double gap = 0.0;      ///< |common - other|
  double lower_bound = 0.0;
  std::size_t iterations = 0;
  bool orthogonal_pair = false;  ///< V perp V' within 1e-10
};

namespace detail {

struct PairState {
  CoefficientState m;
  CoefficientState n;
};

/// Separation of m_V and m_W along u: min over m_V minus max over m_W.
inline double separation_margin(const Subspace& v, const Subspace& w, const RealVector& u) {
  const RealVector ev = eigenvalues_selfadjoint(
      ComplexMatrix(v.basis().adjoint() * diagonal_matrix(u) * v.basis()));
  const RealVector ew = eigenvalues_selfadjoint(
      ComplexMatrix(w.basis().adjoint() * diagonal_matrix(u) * w.basis()));
  return ev(0) - ew(ew.size() - 1);
}

}  // namespace detail

/// Decide whether m_V and m_W meet by minimizing |diag(Q_V M Q_V*) -
/// diag(Q_W N Q_W*)| over pairs of states with Frank-Wolfe on m_V - m_W.
inline IntersectionCertificate moments_intersect(const Subspace& v, const Subspace& w,
                                                 const IntersectionOptions& opt = {}) {
  if (v.ambient_dim() != w.ambient_dim())
    throw InvalidArgument("subspaces live in different ambient dimensions");
  const ComplexMatrix& qv = v.basis();
  const ComplexMatrix& qw = w.basis();
  const Index rv = v.dim(), rw = w.dim();

  fw::Atom<detail::PairState> start{
      centroid(v).coordinates() - centroid(w).coordinates(),
      {ComplexMatrix::Identity(rv, rv) / static_cast<double>(rv),
       ComplexMatrix::Identity(rw, rw) / static_cast<double>(rw)}};
  auto oracle = [&](const RealVector& g) {
    auto a = detail::moment_atom(qv, g, false);
    auto b = detail::moment_atom(qw, g, true);
    return fw::Atom<detail::PairState>{a.point - b.point, {std::move(a.payload), std::move(b.payload)}};
  };
  const auto res = fw::minimize_distance<detail::PairState>(
      oracle, RealVector::Zero(v.ambient_dim()), std::move(start),
      fw::Options{opt.tol, opt.max_iter, opt.variant, false});

  detail::CoefficientState m = ComplexMatrix::Zero(rv, rv);
  detail::CoefficientState n = ComplexMatrix::Zero(rw, rw);
  for (std::size_t a = 0; a < res.atoms.size(); ++a) {
    m += res.weights[a] * res.atoms[a].payload.m;
    n += res.weights[a] * res.atoms[a].payload.n;
  }
  DensityMatrix y = detail::lift_state(qv, m);
  DensityMatrix x = detail::lift_state(qw, n);

  IntersectionCertificate cert;
  cert.common = y.matrix().diagonal().real();
  cert.other = x.matrix().diagonal().real();
  cert.gap = (cert.common - cert.other).norm();
  cert.lower_bound = res.lower;
  cert.iterations = res.iterations;
  cert.orthogonal_pair = spectral_norm(ComplexMatrix(qv.adjoint() * qw)) <= kOrthogonalPairTolerance;

  if (cert.gap <= opt.tol) {
    cert.status = IntersectionStatus::kIntersect;
    cert.witness_y = std::move(y);
    cert.witness_x = std::move(x);
    return cert;
  }
  cert.direction = (cert.common - cert.other) / cert.gap;
  cert.margin = detail::separation_margin(v, w, cert.direction);
  cert.status = cert.margin >= kSeparationMargin ? IntersectionStatus::kDisjoint
                                                 : IntersectionStatus::kIndeterminate;
  return cert;
}

// ---------------------------------------------------------------------------
// Minimality

enum class Verdict { kMinimal, kNotMinimal, kIndeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kMinimal: return "MINIMAL";
    case Verdict::kNotMinimal: return "NOT_MINIMAL";
    case Verdict::kIndeterminate: return "INDETERMINATE";
  }
  return "UNKNOWN";
}

struct MinimalityOptions {
  double eig_tol = 1e-8;  ///< relative to |M|
  IntersectionOptions feasibility;
};

struct MinimalityReport {
  double norm = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  bool symmetric = false;  ///< lambda_max = -lambda_min within eig_tol |M|
  bool clustered = false;  ///< another eigenvalue sits just outside an extracted eigenspace
  Subspace v;              ///< eigenspace of lambda_max
  Subspace w;              ///< eigenspace of lambda_min
  std::optional<IntersectionCertificate> certificate;  ///< run only when symmetric
  Verdict verdict = Verdict::kIndeterminate;
};

namespace detail {

struct ExtremeSpace {
  Subspace space;
  bool clustered;
};

inline ExtremeSpace extreme_eigenspace(const EigenDecomposition& e, double target, double width,
                                       double cluster_width) {
  std::vector<Index> keep;
  bool clustered = false;
  for (Index i = 0; i < e.eigenvalues.size(); ++i) {
    const double d = std::abs(e.eigenvalues(i) - target);
    if (d <= width)
      keep.push_back(i);
    else if (d <= cluster_width)
      clustered = true;
  }
  ComplexMatrix q(e.eigenvectors.rows(), static_cast<Index>(keep.size()));
  for (Index c = 0; c < q.cols(); ++c) q.col(c) = e.eigenvectors.col(keep[c]);
  return {Subspace::from_spanning(q), clustered};
}

}  // namespace detail

/// Decide whether |M| <= |M + D| for every real diagonal D.
inline MinimalityReport check_minimal(const HermitianMatrix& m, const MinimalityOptions& opt = {}) {
  const EigenDecomposition e = hermitian_eig(m);
  const double lmax = e.eigenvalues(e.eigenvalues.size() - 1);
  const double lmin = e.eigenvalues(0);
  const double norm = std::max(std::abs(lmax), std::abs(lmin));
  if (!(norm > 0.0)) throw InvalidArgument("the zero matrix has no minimality verdict");
  const double width = opt.eig_tol * norm;
  const double cluster_width = 1e3 * width;

  auto top = detail::extreme_eigenspace(e, lmax, width, cluster_width);
  auto bottom = detail::extreme_eigenspace(e, lmin, width, cluster_width);
  MinimalityReport r{norm, lmax, lmin, false, top.clustered || bottom.clustered,
                     std::move(top.space), std::move(bottom.space), std::nullopt,
                     Verdict::kIndeterminate};
  const double asymmetry = std::abs(lmax + lmin);
  r.symmetric = asymmetry <= width;
  if (!r.symmetric) {
    r.verdict = asymmetry <= cluster_width ? Verdict::kIndeterminate : Verdict::kNotMinimal;
    return r;
  }
  r.certificate = moments_intersect(r.v, r.w, opt.feasibility);
  switch (r.certificate->status) {
    case IntersectionStatus::kIntersect: r.verdict = Verdict::kMinimal; break;
    case IntersectionStatus::kDisjoint:
      r.verdict = r.clustered ? Verdict::kIndeterminate : Verdict::kNotMinimal;
      break;
    case IntersectionStatus::kIndeterminate: r.verdict = Verdict::kIndeterminate; break;
  }
  return r;
}

struct MinimalMatrixParts {
  double lambda = 1.0;
  Subspace v;
  Subspace w;
  HermitianMatrix r;
};

struct MinimalMatrix {
  HermitianMatrix m;
  MinimalityReport report;
};

/// Assemble M = lambda (P_V - P_W) + R after checking every hypothesis.
inline MinimalMatrix construct_minimal(const MinimalMatrixParts& parts,
                                       const MinimalityOptions& opt = {}) {
  const Index n = parts.v.ambient_dim();
  if (!(parts.lambda > 0.0) || !std::isfinite(parts.lambda))
    throw PreconditionFailed("lambda must be positive and finite");
  if (parts.w.ambient_dim() != n || parts.r.dim() != n)
    throw PreconditionFailed("V, W and R have inconsistent dimensions");
  const double cross = spectral_norm(ComplexMatrix(parts.v.basis().adjoint() * parts.w.basis()));
  if (cross > 1e-10)
    throw PreconditionFailed("V and W are not orthogonal (|Q_V* Q_W| = " + std::to_string(cross) +
                             ")");
  const ComplexMatrix& rm = parts.r.matrix();
  const double rv = spectral_norm(ComplexMatrix(rm * parts.v.projector()));
  const double rw = spectral_norm(ComplexMatrix(rm * parts.w.projector()));
  if (rv > 1e-10) throw PreconditionFailed("R P_V != 0 (norm " + std::to_string(rv) + ")");
  if (rw > 1e-10) throw PreconditionFailed("R P_W != 0 (norm " + std::to_string(rw) + ")");
  const double rnorm = spectral_norm(parts.r);
  if (!(rnorm < parts.lambda - 1e-9))
    throw PreconditionFailed("|R| = " + std::to_string(rnorm) + " is not below lambda");
  const IntersectionCertificate cert = moments_intersect(parts.v, parts.w, opt.feasibility);
  if (cert.status != IntersectionStatus::kIntersect)
    throw PreconditionFailed(std::string("moments of V and W do not intersect (") +
                             to_string(cert.status) + ")");

  HermitianMatrix m = HermitianMatrix::from_hermitian_part(
      parts.lambda * (parts.v.projector() - parts.w.projector()) + rm);
  MinimalityReport report = check_minimal(m, opt);
  if (std::abs(report.norm - parts.lambda) > 1e-10)
    throw NumericalInconsistency("assembled matrix has norm " + std::to_string(report.norm) +
                                 ", expected " + std::to_string(parts.lambda));
  if (report.verdict != Verdict::kMinimal)
    throw NumericalInconsistency(std::string("assembled matrix reported ") +
                                 to_string(report.verdict));
  return MinimalMatrix{std::move(m), std::move(report)};
}

struct BruteForceOptions {
  double grid_step = 1.0 / 20.0;  ///< relative to |M|
  double final_step = 1e-4;       ///< relative to |M|
};

/// min over real diagonal D of |M + D|. A multiple of the identity only
/// shifts the spectrum, so the distance is min over D with D_00 = 0 of half the
/// spread lambda_max - lambda_min of M + D. That convex function is searched
/// on a grid over [-2|M|, 2|M|]^(n-1), then refined by pattern search along
/// the directions {-1, 0, 1}^(n-1). Only for n <= 4.
inline double brute_force_diag_distance(const HermitianMatrix& m, const BruteForceOptions& opt = {}) {
  const Index n = m.dim();
  if (n < 1 || n > 4) throw InvalidArgument("brute force oracle supports 1 <= n <= 4");
  const double norm = spectral_norm(m);
  if (norm == 0.0 || n == 1) return 0.0;
  const Index k = n - 1;
  const ComplexMatrix& base = m.matrix();
  ComplexMatrix work = base;
  auto eval = [&](const RealVector& d) {
    for (Index i = 0; i < k; ++i) work(i + 1, i + 1) = base(i + 1, i + 1) + d(i);
    const RealVector ev = detail::eigenvalues_selfadjoint(work);
    return 0.5 * (ev(n - 1) - ev(0));
  };

  const double step = opt.grid_step * norm;
  const int half = static_cast<int>(std::lround(2.0 / opt.grid_step));
  const int per_axis = 2 * half + 1;
  RealVector best_d = RealVector::Zero(k);
  double best = eval(best_d);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  RealVector d(k);
  for (;;) {
    for (Index i = 0; i < k; ++i) d(i) = (idx[static_cast<std::size_t>(i)] - half) * step;
    const double f = eval(d);
    if (f < best) {
      best = f;
      best_d = d;
    }
    Index c = 0;
    while (c < k && ++idx[static_cast<std::size_t>(c)] == per_axis) idx[static_cast<std::size_t>(c++)] = 0;
    if (c == k) break;
  }

  std::vector<RealVector> directions;
  for (int code = 0; code < static_cast<int>(std::pow(3, k)); ++code) {
    RealVector dir(k);
    int rest = code;
    for (Index i = 0; i < k; ++i, rest /= 3) dir(i) = static_cast<double>(rest % 3 - 1);
    if (dir.cwiseAbs().sum() > 0.0) directions.push_back(dir);
  }
  for (double h = step; h >= opt.final_step * norm; h /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const RealVector& dir : directions) {
        const RealVector trial = best_d + h * dir;
        const double f = eval(trial);
        if (f < best) {
          best = f;
          best_d = trial;
          improved = true;
        }
      }
    }
  }
  return best;
}

struct CoordinateBoundVerdict {
  bool applicable = false;
  bool holds = false;
  double max_coordinate = 0.0;
  std::string reason;
};

/// For an orthogonal pair whose moments meet, the common point lies in [0, 1/2]^n.
inline CoordinateBoundVerdict support_coordinate_bound_check(const IntersectionCertificate& cert) {
  CoordinateBoundVerdict v;
  if (cert.status != IntersectionStatus::kIntersect) {
    v.reason = "moments do not intersect";
    return v;
  }
  if (!cert.orthogonal_pair) {
    v.reason = "subspaces are not orthogonal";
    return v;
  }
  v.applicable = true;
  v.max_coordinate = cert.common.maxCoeff();
  v.holds = v.max_coordinate <= 0.5 + 1e-9;
  return v;
}

struct HausdorffEstimate {
  double estimate = 0.0;             ///< max_u |h_V(u) - h_W(u)| over the directions
  double projector_distance = 0.0;   ///< Frobenius |P_V - P_W|
  double projector_spectral = 0.0;   ///< spectral |P_V - P_W|
  bool hypothesis = false;           ///< projector_distance < 1/(2n)
  double bound = 0.0;                ///< (2 sqrt(n) + 1) projector_distance
  bool bound_holds = true;           ///< estimate <= bound + 1e-9, when hypothesis
};

inline HausdorffEstimate hausdorff_moments(const Subspace& v, const Subspace& w,
                                           const std::vector<RealVector>& dirs,
                                           unsigned threads = thread_budget()) {
  const Index n = v.ambient_dim();
  if (w.ambient_dim() != n) throw InvalidArgument("subspaces live in different ambient dimensions");
  for (const RealVector& u : dirs) {
    if (u.size() != n) throw InvalidArgument("direction has the wrong dimension");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw InvalidArgument("directions must be unit vectors");
  }
  std::vector<double> diff(dirs.size(), 0.0);
  parallel_for(dirs.size(), threads, [&](std::size_t i) {
    diff[i] = std::abs(support_moment(v, dirs[i]).value - support_moment(w, dirs[i]).value);
  });
  HausdorffEstimate h;
  for (double d : diff) h.estimate = std::max(h.estimate, d);
  const ComplexMatrix dp = v.projector() - w.projector();
  h.projector_distance = dp.norm();
  h.projector_spectral = spectral_norm(dp);
  h.hypothesis = h.projector_distance < 1.0 / (2.0 * static_cast<double>(n));
  h.bound = (2.0 * std::sqrt(static_cast<double>(n)) + 1.0) * h.projector_distance;
  h.bound_holds = !h.hypothesis || h.estimate <= h.bound + 1e-9;
  return h;
}

}  // namespace momentkit
