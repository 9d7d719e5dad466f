#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace momentkit {

/// Base class of every exception thrown by momentkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public InvalidArgument {
 public:
  explicit NotHermitian(double max_asymmetry)
      : InvalidArgument("matrix is not hermitian: max |A - A*| entry = " +
                        std::to_string(max_asymmetry)),
        max_asymmetry_(max_asymmetry) {}

  double max_asymmetry() const noexcept { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

class InvalidDensity : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotInSubspace : public InvalidArgument {
 public:
  explicit NotInSubspace(double residual)
      : InvalidArgument("vector does not lie in the subspace: |Ps - s| = " +
                        std::to_string(residual)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The subspace has coordinates j with P e_j = 0.
class NotGeneric : public Error {
 public:
  explicit NotGeneric(std::vector<std::size_t> offending)
      : Error(describe(offending)), offending_(std::move(offending)) {}

  const std::vector<std::size_t>& offending() const noexcept { return offending_; }

 protected:
  NotGeneric(std::string what, std::vector<std::size_t> offending)
      : Error(std::move(what)), offending_(std::move(offending)) {}

 private:
  static std::string describe(const std::vector<std::size_t>& idx) {
    std::string s = "subspace is not generic; P e_j vanishes for j in {";
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(idx[i]);
    }
    return s + "}";
  }

  std::vector<std::size_t> offending_;
};

class NotGenericAtCoordinate : public NotGeneric {
 public:
  explicit NotGenericAtCoordinate(std::size_t j)
      : NotGeneric("no principal vector at coordinate " + std::to_string(j) +
                       " (P e_j vanishes)",
                   {j}),
        index_(j) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// v^j and v^k are linearly dependent, so no curve joins them.
class DegenerateCurve : public Error {
 public:
  DegenerateCurve(std::size_t j, std::size_t k)
      : Error("principal vectors " + std::to_string(j) + " and " + std::to_string(k) +
              " are linearly dependent"),
        j_(j),
        k_(k) {}

  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t j_, k_;
};

/// A result failed its own post-condition check.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace momentkit
