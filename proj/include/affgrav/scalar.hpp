#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace affgrav {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational factorial(int n);
Integer binomial(int n, int k);

/// Reduced text form: "3", "-1/6".
std::string to_string(const Rational& q);

/// Exact square root of a non-negative rational, if it is rational.
std::optional<Rational> rational_sqrt(const Rational& q);

/// Element a + b*sqrt2 of the field Q(sqrt2).
///
/// Both components are kept reduced by the underlying rational type, so the
/// representation is canonical and equality is componentwise.
class QR2Scalar {
 public:
  QR2Scalar() = default;
  QR2Scalar(std::int64_t n) : a_(n) {}  // NOLINT: implicit integer promotion is intended
  QR2Scalar(Rational a) : a_(std::move(a)) {}  // NOLINT
  QR2Scalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QR2Scalar sqrt2() { return {Rational(0), Rational(1)}; }
  static QR2Scalar fraction(std::int64_t num, std::int64_t den) { return Rational(num, den); }

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& sqrt2_part() const noexcept { return b_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const noexcept { return b_.is_zero(); }

  /// Exact sign (-1, 0, 1) of the real number a + b*sqrt2.
  int sign() const;

  /// Multiplicative inverse via the conjugate; throws DivisionByZero on 0.
  QR2Scalar inverse() const;
  QR2Scalar conjugate() const { return {a_, -b_}; }
  /// a^2 - 2b^2
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

  /// Exact non-negative square root inside Q(sqrt2), if one exists.
  std::optional<QR2Scalar> sqrt() const;

  double to_double() const;

  /// "a + b*sqrt2" with zero parts omitted, e.g. "3/7 - 1/7*sqrt2", "-1/4*sqrt2", "0".
  std::string to_string() const;

  QR2Scalar operator-() const { return {-a_, -b_}; }
  QR2Scalar& operator+=(const QR2Scalar& o);
  QR2Scalar& operator-=(const QR2Scalar& o);
  QR2Scalar& operator*=(const QR2Scalar& o);
  QR2Scalar& operator/=(const QR2Scalar& o) { return *this *= o.inverse(); }

  friend QR2Scalar operator+(QR2Scalar x, const QR2Scalar& y) { return x += y; }
  friend QR2Scalar operator-(QR2Scalar x, const QR2Scalar& y) { return x -= y; }
  friend QR2Scalar operator*(QR2Scalar x, const QR2Scalar& y) { return x *= y; }
  friend QR2Scalar operator/(QR2Scalar x, const QR2Scalar& y) { return x /= y; }

  friend bool operator==(const QR2Scalar& x, const QR2Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_;
  Rational b_;
};

/// x^e for any integer e; negative exponents go through inverse().
QR2Scalar pow(const QR2Scalar& x, int e);

}  // namespace affgrav
