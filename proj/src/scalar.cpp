#include "affgrav/scalar.hpp"

#include <cmath>
#include <sstream>

#include "affgrav/errors.hpp"

namespace affgrav {

namespace {

constexpr long double kSqrt2 = 1.414213562373095048801688724209698079L;

int rational_sign(const Rational& q) { return q.sign(); }

}  // namespace

Rational factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  const Integer rn = boost::multiprecision::sqrt(num);
  const Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

int QR2Scalar::sign() const {
  const int sa = rational_sign(a_);
  const int sb = rational_sign(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 2 b^2
  const Rational n = norm();
  return n.sign() > 0 ? sa : sb;
}

QR2Scalar QR2Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const Rational n = norm();
  return {a_ / n, -b_ / n};
}

std::optional<QR2Scalar> QR2Scalar::sqrt() const {
  if (sign() < 0) return std::nullopt;
  if (is_zero()) return QR2Scalar{};
  // (c + d sqrt2)^2 = c^2 + 2 d^2 + 2cd sqrt2
  std::optional<QR2Scalar> root;
  if (b_.is_zero()) {
    if (auto c = rational_sqrt(a_)) {
      root = QR2Scalar(*c);
    } else if (auto d = rational_sqrt(a_ / 2)) {
      root = QR2Scalar(Rational(0), *d);
    }
  } else if (auto disc = rational_sqrt(norm())) {
    // c^2 = (a +- sqrt(a^2 - 2b^2)) / 2, d = b / (2c)
    for (const Rational& c2 : {Rational((a_ + *disc) / 2), Rational((a_ - *disc) / 2)}) {
      auto c = rational_sqrt(c2);
      if (!c || c->is_zero()) continue;
      QR2Scalar cand(*c, b_ / (2 * *c));
      if (cand * cand == *this) {
        root = cand;
        break;
      }
    }
  }
  if (root && root->sign() < 0) root = -*root;
  return root;
}

double QR2Scalar::to_double() const {
  const long double a = a_.convert_to<long double>();
  const long double b = b_.convert_to<long double>();
  if (rational_sign(a_) * rational_sign(b_) >= 0) return static_cast<double>(a + b * kSqrt2);
  // a + b sqrt2 = (a^2 - 2b^2) / (a - b sqrt2); the denominator has no cancellation
  const long double n = norm().convert_to<long double>();
  return static_cast<double>(n / (a - b * kSqrt2));
}

std::string QR2Scalar::to_string() const {
  if (b_.is_zero()) return affgrav::to_string(a_);
  std::string rhs = affgrav::to_string(b_) + "*sqrt2";
  if (a_.is_zero()) return rhs;
  if (b_.sign() < 0) return affgrav::to_string(a_) + " - " + affgrav::to_string(-b_) + "*sqrt2";
  return affgrav::to_string(a_) + " + " + rhs;
}

QR2Scalar& QR2Scalar::operator+=(const QR2Scalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QR2Scalar& QR2Scalar::operator-=(const QR2Scalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QR2Scalar& QR2Scalar::operator*=(const QR2Scalar& o) {
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QR2Scalar pow(const QR2Scalar& x, int e) {
  if (e < 0) return pow(x.inverse(), -e);
  QR2Scalar result(1);
  QR2Scalar base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace affgrav
