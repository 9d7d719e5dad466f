#pragma once

#include <cmath>
#include <string>

#include "momentkit/linalg.hpp"

namespace momentkit {

/// A point of a moment set: a nonnegative real n-vector summing to one.
class MomentPoint {
 public:
  static constexpr double kNegativeSlack = 1e-12;
  static constexpr double kSumSlack = 1e-10;

  explicit MomentPoint(RealVector x) : x_(std::move(x)) {
    if (x_.size() == 0) throw InvalidArgument("moment point must be non-empty");
    if (!x_.allFinite()) throw InvalidArgument("moment point has non-finite coordinates");
    if (x_.minCoeff() < -kNegativeSlack)
      throw InvalidArgument("moment point has a negative coordinate: " +
                            std::to_string(x_.minCoeff()));
    if (std::abs(x_.sum() - 1.0) > kSumSlack)
      throw InvalidArgument("moment point coordinates sum to " + std::to_string(x_.sum()));
  }

  /// |v|^2 coordinatewise for a unit vector v.
  static MomentPoint squared_moduli(const ComplexVector& v) {
    return MomentPoint(v.cwiseAbs2());
  }

  const RealVector& coordinates() const noexcept { return x_; }
  Index size() const noexcept { return x_.size(); }
  double operator()(Index i) const { return x_(i); }

 private:
  RealVector x_;
};

}  // namespace momentkit
