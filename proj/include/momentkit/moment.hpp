#pragma once

// The moment set m_S = conv{ |s|^2 : s in S, |s| = 1 }: sampling, its exact
// support function, and the curves of extreme points joining principal
// standard vectors.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "momentkit/moment_point.hpp"
#include "momentkit/subspace.hpp"

namespace momentkit {

inline constexpr double kMembershipTolerance = 1e-10;

inline void require_unit_in(const Subspace& s, const ComplexVector& x) {
  if (x.size() != s.ambient_dim())
    throw InvalidArgument("vector has dimension " + std::to_string(x.size()) + ", expected " +
                          std::to_string(s.ambient_dim()));
  if (std::abs(x.norm() - 1.0) > kMembershipTolerance)
    throw InvalidArgument("vector is not a unit vector (norm " + std::to_string(x.norm()) + ")");
  const double res = s.residual(x);
  if (res > kMembershipTolerance) throw NotInSubspace(res);
}

/// |s|^2 for a unit vector s of S.
inline MomentPoint moment_of_vector(const Subspace& s, const ComplexVector& x) {
  require_unit_in(s, x);
  return MomentPoint::squared_moduli(x);
}

/// Unit vectors Qz with z uniform on the unit sphere of C^r (normalized
/// complex gaussians). Deterministic for a given seed.
inline std::vector<ComplexVector> sample_unit_vectors(const Subspace& s, std::size_t count,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ComplexVector> out;
  out.reserve(count);
  const Index r = s.dim();
  for (std::size_t i = 0; i < count; ++i) {
    ComplexVector z(r);
    double norm = 0.0;
    do {
      for (Index h = 0; h < r; ++h) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(h) = Complex(re, im);
      }
      norm = z.norm();
    } while (norm == 0.0);
    z /= norm;
    ComplexVector x = s.basis() * z;
    x /= x.norm();
    out.push_back(std::move(x));
  }
  return out;
}

inline std::vector<MomentPoint> sample_moment(const Subspace& s, std::size_t count,
                                              std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("sample count must be at least 1");
  std::vector<MomentPoint> out;
  out.reserve(count);
  for (const ComplexVector& x : sample_unit_vectors(s, count, seed))
    out.push_back(MomentPoint::squared_moduli(x));
  return out;
}

struct SupportResult {
  double value = 0.0;
  ComplexVector maximizer;  ///< unit vector of S attaining the value
  /// Gap between the two largest eigenvalues of the compression; +inf when
  /// dim S = 1. A zero gap means the supporting face is not a single point.
  double eigengap = 0.0;
};

/// h_{m_S}(c) = max_{s in S, |s|=1} sum_i c_i |s_i|^2, the top eigenvalue of
/// the r x r compression Q* diag(c) Q.
inline SupportResult support_moment(const Subspace& s, const RealVector& c) {
  if (c.size() != s.ambient_dim()) throw InvalidArgument("direction has the wrong dimension");
  if (!c.allFinite()) throw InvalidArgument("direction has non-finite entries");
  const ComplexMatrix& q = s.basis();
  const EigenDecomposition e =
      detail::eig_selfadjoint(ComplexMatrix(q.adjoint() * diagonal_matrix(c) * q));
  const Index top = e.eigenvalues.size() - 1;
  SupportResult out;
  out.value = e.eigenvalues(top);
  out.maximizer = q * e.eigenvectors.col(top);
  out.maximizer /= out.maximizer.norm();
  out.eigengap = top == 0 ? std::numeric_limits<double>::infinity()
                          : e.eigenvalues(top) - e.eigenvalues(top - 1);
  return out;
}

/// Whether |v^j|^2 is exposed by the direction e_j, i.e. the top eigenvalue of
/// Q* E_j Q is simple.
struct ExtremalityReport {
  std::size_t index = 0;
  double support_value = 0.0;  ///< h_{m_S}(e_j) = P_jj
  double eigengap = 0.0;
  bool exposed = false;  ///< false downgrades "extreme" to "boundary"
};

inline ExtremalityReport principal_extremality(const Subspace& s, std::size_t j,
                                               double gap_tol = 1e-10) {
  (void)principal_vector(s, j);  // throws when P e_j vanishes
  RealVector ej = RealVector::Zero(s.ambient_dim());
  ej(static_cast<Index>(j)) = 1.0;
  const SupportResult sup = support_moment(s, ej);
  return ExtremalityReport{j, sup.value, sup.eigengap,
                           sup.eigengap > gap_tol * std::max(1.0, std::abs(sup.value))};
}

// ---------------------------------------------------------------------------
// Curves v^{j->k}(t) = cos(t) v^j + sin(t) w~^{jk}

inline constexpr double kIndependenceTolerance = 1e-9;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Everything needed to evaluate the curve from v^j towards v^k.
struct CurveFrame {
  std::size_t j = 0, k = 0;
  PrincipalVector vj, vk;
  Complex phase;         ///< e^{i arg(v^j_k)}
  ComplexVector w_tilde; ///< unit, orthogonal to v^j, inside span{v^j, v^k}
  double t0 = 0.0;       ///< arccos(|v^j_k| / v^k_k); curve(t0) = phase * v^k
  bool orthogonal = false;  ///< v^j perp v^k (the squared curve is a segment)
};

inline CurveFrame curve_frame(const Subspace& s, std::size_t j, std::size_t k,
                              double generic_tol = kGenericTolerance) {
  if (j == k) throw InvalidArgument("curve endpoints must differ (j == k)");
  CurveFrame f;
  f.j = j;
  f.k = k;
  f.vj = principal_vector(s, j, generic_tol);
  f.vk = principal_vector(s, k, generic_tol);
  const Index ji = static_cast<Index>(j), ki = static_cast<Index>(k);
  if (f.vj.top - std::abs(f.vk.v(ji)) <= kIndependenceTolerance) throw DegenerateCurve(j, k);

  const Complex vjk = f.vj.v(ki);
  f.phase = unit_phase(arg_or_zero(vjk));
  ComplexVector rest = f.vk.v - inner(f.vk.v, f.vj.v) * f.vj.v;
  f.w_tilde = f.phase * rest / rest.norm();
  f.t0 = std::acos(std::clamp(std::abs(vjk) / f.vk.top, 0.0, 1.0));
  f.orthogonal = std::abs(vjk) <= kMembershipTolerance;
  return f;
}

struct CurveSample {
  std::size_t j = 0, k = 0;
  double t = 0.0;
  ComplexVector v;  ///< unit vector of S
  RealVector m;     ///< |v|^2, a point of m_S
};

inline CurveSample curve_point(const CurveFrame& f, double t) {
  if (!(t >= -1e-12 && t <= kHalfPi + 1e-12))
    throw InvalidArgument("curve parameter " + std::to_string(t) + " outside [0, pi/2]");
  CurveSample out;
  out.j = f.j;
  out.k = f.k;
  out.t = t;
  out.v = std::cos(t) * f.vj.v + std::sin(t) * f.w_tilde;
  out.m = out.v.cwiseAbs2();
  return out;
}

inline CurveSample curve_point(const Subspace& s, std::size_t j, std::size_t k, double t) {
  return curve_point(curve_frame(s, j, k), t);
}

/// The (j, k) moduli of the curve trace cos(t) a + sin(t) b, a quarter of an
/// ellipse centred at the origin.
struct EllipseParams {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
  bool segment = false;  ///< v^j perp v^k: the squared (j, k) curve is a segment
};

inline EllipseParams ellipse_projection(const CurveFrame& f) {
  const double vjk = std::abs(f.vj.v(static_cast<Index>(f.k)));
  EllipseParams e;
  e.a = Eigen::Vector2d(f.vj.top, vjk);
  e.b = Eigen::Vector2d(0.0, std::sqrt(std::max(0.0, f.vk.top * f.vk.top - vjk * vjk)));
  e.segment = f.orthogonal;
  return e;
}

inline EllipseParams ellipse_projection(const Subspace& s, std::size_t j, std::size_t k) {
  return ellipse_projection(curve_frame(s, j, k));
}

struct Domination {
  double t = 0.0;              ///< t_x = arccos |<x, v^j>|
  double j_residual = 0.0;     ///< | |x_j| - |v_j(t_x)| |
  double k_slack = 0.0;        ///< |v_k(t_x)| - |x_k|, nonnegative up to rounding
};

/// The unique t_x with |x_j| = |v_j(t_x)| and |x_k| <= |v_k(t_x)|.
inline Domination dominating_t(const Subspace& s, std::size_t j, std::size_t k,
                               const ComplexVector& x) {
  require_unit_in(s, x);
  const CurveFrame f = curve_frame(s, j, k);
  const double a = std::min(1.0, std::abs(inner(x, f.vj.v)));
  Domination d;
  d.t = std::acos(a);
  const CurveSample c = curve_point(f, d.t);
  const Index ji = static_cast<Index>(j), ki = static_cast<Index>(k);
  d.j_residual = std::abs(std::abs(x(ji)) - std::abs(c.v(ji)));
  d.k_slack = std::abs(c.v(ki)) - std::abs(x(ki));
  if (d.j_residual > 1e-10)
    throw NumericalInconsistency("dominating_t: j-coordinate mismatch " +
                                 std::to_string(d.j_residual));
  if (d.k_slack < -1e-12)
    throw NumericalInconsistency("dominating_t: k-coordinate exceeds the curve by " +
                                 std::to_string(-d.k_slack));
  return d;
}

/// | v^{j->k}(t) - e^{i arg v^j_k} v^{k->j}(t0 - t) | for t in [0, t0].
inline double curve_overlap_check(const Subspace& s, std::size_t j, std::size_t k, double t) {
  const CurveFrame fjk = curve_frame(s, j, k);
  const CurveFrame fkj = curve_frame(s, k, j);
  if (!(t >= -1e-12 && t <= fjk.t0 + 1e-12))
    throw InvalidArgument("overlap parameter outside [0, t0]");
  const double back = std::clamp(fjk.t0 - t, 0.0, fkj.t0);
  const ComplexVector lhs = curve_point(fjk, std::clamp(t, 0.0, fjk.t0)).v;
  const ComplexVector rhs = fjk.phase * curve_point(fkj, back).v;
  return (lhs - rhs).norm();
}

}  // namespace momentkit
