#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace affgrav {

/// Raised when inverting the zero element of Q(sqrt2).
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in Q(sqrt2)") {}
};

/// Raised by substitute() when a derivative order has no numeric value.
class MissingAssignment : public std::invalid_argument {
 public:
  explicit MissingAssignment(std::vector<int> orders);
  const std::vector<int>& orders() const noexcept { return orders_; }

 private:
  std::vector<int> orders_;
};

/// Precondition violation of a series operation (nonzero constant term,
/// non-constant leading coefficient, index out of range, ...).
class SeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parametric curve with [c_u, c_uu] <= 0 somewhere on its domain.
class DegenerateCurve : public std::domain_error {
 public:
  explicit DegenerateCurve(double u);
  double parameter() const noexcept { return u_; }

 private:
  double u_;
};

/// The line y = delta does not cut the sampled curve on both sides of the base point.
class NoBracket : public std::runtime_error {
 public:
  NoBracket(double delta, const std::string& side);
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

class RankDeficientFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace affgrav
