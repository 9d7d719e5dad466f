#pragma once

// Deterministic direction sets for support-function sweeps.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "momentkit/linalg.hpp"

namespace momentkit {

namespace detail {

/// Root of x^{d+1} = x + 1; the generalized golden ratio of the R_d sequence.
inline double harmonious_ratio(int d) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

}  // namespace detail

/// `count` unit vectors spread over the sphere S^{n-1}. n = 2 uses equally
/// spaced angles, n = 3 the Fibonacci sphere, and larger n a Kronecker (R_d)
/// low-discrepancy sequence pushed through Box-Muller and normalized.
inline std::vector<RealVector> fibonacci_directions(Index n, std::size_t count) {
  if (n < 1) throw InvalidArgument("direction dimension must be positive");
  std::vector<RealVector> out;
  out.reserve(count);
  if (n == 1) {
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(RealVector::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    return out;
  }
  if (n == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
      out.push_back((RealVector(2) << std::cos(a), std::sin(a)).finished());
    }
    return out;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      out.push_back((RealVector(3) << rho * std::cos(phi), rho * std::sin(phi), z).finished());
    }
    return out;
  }
  const int dims = static_cast<int>(2 * ((n + 1) / 2));
  const double g = detail::harmonious_ratio(dims);
  std::vector<double> alpha(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) alpha[static_cast<std::size_t>(d)] = std::fmod(std::pow(1.0 / g, d + 1), 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    RealVector v(n);
    for (Index c = 0; c < n; c += 2) {
      const auto u = [&](Index d) {
        double x = std::fmod(0.5 + alpha[static_cast<std::size_t>(d)] * static_cast<double>(i + 1), 1.0);
        return std::clamp(x, 1e-12, 1.0 - 1e-12);
      };
      const double radius = std::sqrt(-2.0 * std::log(u(c)));
      const double angle = 2.0 * std::numbers::pi * u(c + 1);
      v(c) = radius * std::cos(angle);
      if (c + 1 < n) v(c + 1) = radius * std::sin(angle);
    }
    const double norm = v.norm();
    out.push_back(norm > 0.0 ? RealVector(v / norm) : RealVector(RealVector::Unit(n, 0)));
  }
  return out;
}

/// Uniformly random unit vectors of R^n, deterministic per seed.
inline std::vector<RealVector> random_directions(Index n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<RealVector> out;
  out.reserve(count);
  while (out.size() < count) {
    RealVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = gauss(rng);
    const double norm = v.norm();
    if (norm > 0.0) out.push_back(v / norm);
  }
  return out;
}

}  // namespace momentkit
