#pragma once

// Frank-Wolfe minimization of |x - target| over a convex set K that is only
// known through a linear minimization oracle s = argmin_{y in K} <g, y>.
//
// Two variants share the oracle:
//  * kLineSearch: classic Frank-Wolfe with the closed-form step for the
//    quadratic objective.
//  * kFullyCorrective: after each oracle call the weights of all active atoms
//    are re-optimized (least squares on the simplex), which keeps
//    the active set small and converges fast even when the target sits on the
//    curved boundary of K.
//
// Every iteration also yields a certified lower bound on dist(target, K) from
// the supporting hyperplane with normal x - target.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "momentkit/linalg.hpp"

namespace momentkit::fw {

enum class Variant { kFullyCorrective, kLineSearch };

struct Options {
  double tol = 1e-7;
  std::size_t max_iter = 50000;
  Variant variant = Variant::kFullyCorrective;
  bool record_history = false;
};

template <class Payload>
struct Atom {
  RealVector point;
  Payload payload;
};

template <class Payload>
struct Result {
  RealVector x;        ///< best point of K found
  double upper = 0.0;  ///< |x - target|
  double lower = 0.0;  ///< certified lower bound on dist(target, K)
  std::vector<Atom<Payload>> atoms;
  std::vector<double> weights;  ///< convex weights, x = sum w_a atoms[a].point
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> history;  ///< |x - target|^2 after each iteration
};

namespace detail {

/// Minimize |sum_a w_a p_a - target| over the simplex w >= 0, sum w = 1.
/// Active-set method; each subproblem fixes the passive weights to an affine
/// hull and solves it by column-pivoted QR.
inline RealVector simplex_least_squares(const RealMatrix& points, const RealVector& target) {
  const Index k = points.cols();
  std::vector<bool> passive(static_cast<std::size_t>(k), false);

  auto solve_passive = [&]() {
    std::vector<Index> idx;
    for (Index i = 0; i < k; ++i)
      if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
    RealVector z = RealVector::Zero(k);
    const Index ref = idx.front();
    if (idx.size() == 1) {
      z(ref) = 1.0;
      return z;
    }
    RealMatrix d(points.rows(), static_cast<Index>(idx.size()) - 1);
    for (Index c = 1; c < static_cast<Index>(idx.size()); ++c)
      d.col(c - 1) = points.col(idx[static_cast<std::size_t>(c)]) - points.col(ref);
    const RealVector y = d.colPivHouseholderQr().solve(RealVector(target - points.col(ref)));
    for (Index c = 1; c < static_cast<Index>(idx.size()); ++c) z(idx[static_cast<std::size_t>(c)]) = y(c - 1);
    z(ref) = 1.0 - y.sum();
    return z;
  };

  Index start = 0;
  (points.colwise() - target).colwise().squaredNorm().minCoeff(&start);
  RealVector w = RealVector::Zero(k);
  w(start) = 1.0;
  passive[static_cast<std::size_t>(start)] = true;
  const double scale = std::max(1.0, points.cwiseAbs().maxCoeff());

  for (Index outer = 0; outer < 3 * k + 10; ++outer) {
    const RealVector x = points * w;
    const RealVector e = x - target;
    const double threshold = -1e-13 * scale * e.norm();
    Index best = -1;
    double best_g = threshold;
    for (Index i = 0; i < k; ++i) {
      if (passive[static_cast<std::size_t>(i)]) continue;
      const double g = (points.col(i) - x).dot(e);
      if (g < best_g) {
        best_g = g;
        best = i;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    for (Index inner = 0; inner < 3 * k + 10; ++inner) {
      const RealVector z = solve_passive();
      bool feasible = true;
      for (Index i = 0; i < k; ++i)
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) feasible = false;
      if (feasible) {
        w = z;
        break;
      }
      double alpha = 1.0;
      for (Index i = 0; i < k; ++i) {
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          const double denom = w(i) - z(i);
          if (denom > 0.0) alpha = std::min(alpha, w(i) / denom);
        }
      }
      w += alpha * (z - w);
      for (Index i = 0; i < k; ++i) {
        if (passive[static_cast<std::size_t>(i)] && w(i) <= 1e-15) {
          passive[static_cast<std::size_t>(i)] = false;
          w(i) = 0.0;
        }
      }
    }
  }
  w = w.cwiseMax(0.0);
  return w / w.sum();
}

}  // namespace detail

/// Oracle: `Atom<Payload> oracle(const RealVector& g)` returning a point of K
/// minimizing <g, y>.
template <class Payload, class Oracle>
Result<Payload> minimize_distance(Oracle&& oracle, const RealVector& target, Atom<Payload> start,
                                  const Options& opt) {
  Result<Payload> res;
  res.atoms.push_back(std::move(start));
  res.weights.push_back(1.0);
  res.x = res.atoms.front().point;

  auto objective = [&](const RealVector& x) { return (x - target).squaredNorm(); };
  double f = objective(res.x);

  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    res.upper = std::sqrt(f);
    if (res.upper <= opt.tol || res.upper - res.lower <= opt.tol) {
      res.converged = true;
      break;
    }
    const RealVector g = res.x - target;
    Atom<Payload> s = oracle(g);
    res.lower = std::max(res.lower, g.dot(s.point - target) / res.upper);
    res.iterations = it + 1;
    if (res.upper - res.lower <= opt.tol) {
      res.converged = true;
      break;
    }

    bool stepped = false;
    if (opt.variant == Variant::kFullyCorrective) {
      const Index k = static_cast<Index>(res.atoms.size()) + 1;
      RealMatrix pts(target.size(), k);
      for (Index a = 0; a + 1 < k; ++a) pts.col(a) = res.atoms[static_cast<std::size_t>(a)].point;
      pts.col(k - 1) = s.point;
      const RealVector w = detail::simplex_least_squares(pts, target);
      const RealVector x_new = pts * w;
      const double f_new = objective(x_new);
      if (w.sum() > 0.0 && f_new <= f) {
        res.atoms.push_back(std::move(s));
        std::vector<Atom<Payload>> atoms;
        std::vector<double> weights;
        for (Index a = 0; a < k; ++a) {
          if (w(a) > 0.0) {
            atoms.push_back(std::move(res.atoms[static_cast<std::size_t>(a)]));
            weights.push_back(w(a));
          }
        }
        res.atoms = std::move(atoms);
        res.weights = std::move(weights);
        res.x = x_new;
        f = f_new;
        stepped = true;
      }
    }
    if (!stepped) {
      const RealVector d = s.point - res.x;
      const double dd = d.squaredNorm();
      const double gamma = dd > 0.0 ? std::clamp(-g.dot(d) / dd, 0.0, 1.0) : 0.0;
      if (gamma > 0.0) {
        if (gamma == 1.0) {
          res.atoms.clear();
          res.weights.clear();
        }
        for (double& w : res.weights) w *= (1.0 - gamma);
        res.atoms.push_back(std::move(s));
        res.weights.push_back(gamma);
        res.x += gamma * d;
        f = objective(res.x);
      }
    }
    if (opt.record_history) res.history.push_back(f);
  }
  res.upper = std::sqrt(f);
  return res;
}

}  // namespace momentkit::fw
