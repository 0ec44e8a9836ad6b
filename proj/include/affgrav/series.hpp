#pragma once

#include <span>
#include <string>
#include <vector>

#include "affgrav/diffpoly.hpp"

namespace affgrav {

/// Truncated power series c_0 + c_1 s + ... + c_N s^N with DiffPoly coefficients.
///
/// Every operation is exact through the stated order and never reads a
/// coefficient beyond it.
class Series {
 public:
  explicit Series(int order = 0);
  explicit Series(std::vector<DiffPoly> coeffs);

  /// s + 0 s^2 + ... (truncated at `order`).
  static Series identity(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const DiffPoly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  DiffPoly& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  std::span<const DiffPoly> coeffs() const noexcept { return coeffs_; }

  Series truncated(int order) const;
  /// Term-wise d/dt; the result has order N-1.
  Series derivative() const;
  /// Applies fn to every coefficient, e.g. differentiate or kill_odd_derivatives.
  Series map(DiffPoly (*fn)(const DiffPoly&)) const;

  Series operator-() const;
  friend Series operator+(const Series& x, const Series& y);
  friend Series operator-(const Series& x, const Series& y);
  /// Cauchy product truncated at min(order(x), order(y)).
  friend Series operator*(const Series& x, const Series& y);
  friend Series operator*(const QR2Scalar& c, const Series& x);
  friend bool operator==(const Series&, const Series&) = default;

  /// Numeric value sum_k c_k(assign) t^k.
  double evaluate(const std::map<int, double>& assign, double t) const;

 private:
  std::vector<DiffPoly> coeffs_;
};

// Coefficient sequences below are 0-based spans whose element 0 is ignored,
// so a[i] is a_i for i >= 1.

/// Binomially weighted convolution sum_{l=1}^{k-1} C(k,l) a_l b_{k-l}.
DiffPoly conv(std::span<const DiffPoly> a, std::span<const DiffPoly> b, int k);

/// Exponential partial Bell polynomial B_{k,l}(a_1, ..., a_{k-l+1}) by
/// summing over the index tuples (j_1, ..., j_{k-l+1}) with sum j_i = l and
/// sum i*j_i = k.
DiffPoly bell(int k, int l, std::span<const DiffPoly> a);

/// B_{k,l}(a) as the l-fold weighted convolution power divided by l!.
DiffPoly bell_via_conv(int k, int l, std::span<const DiffPoly> a);

/// [s^k] a(s)^l for the ordinary series a(s) = sum a_i s^i, which equals
/// (l!/k!) B_{k,l}(1! a_1, 2! a_2, ...).
DiffPoly ordinary_bell(int k, int l, std::span<const DiffPoly> a);

/// chi(s) = b(a(s)); both series must have zero constant term and equal order.
Series compose(const Series& b, const Series& a);

/// The series b with a(b(t)) = t; a_0 = 0 and a_1 must be a nonzero constant.
Series comp_inverse(const Series& a);

/// b with b^2 = a, b_1 = sign * sqrt(a_2). Requires a_0 = a_1 = 0 and a_2 a
/// positive constant whose square root lies in Q(sqrt2). Since b_k depends on
/// a_{k+1}, an input of order N yields an output of order N-1.
Series sqrt_series(const Series& a, int sign);

/// True iff a_k lies in P^{k-n, k+sigma} for every k <= order.
bool is_alternating(const Series& a, int n, int sigma);

struct ExplicitnessReport {
  int n = 0;
  /// leading[k]: constant multiplying k_{k-n} in a_k (0 when k < n).
  std::vector<QR2Scalar> leading;
  /// residual[k] = a_k - leading[k] * k_{k-n}.
  std::vector<DiffPoly> residual;
  /// residual[k] lies in P^{k-n-1, k-n}.
  std::vector<bool> residual_ok;
  /// leading[k] != 0, required only for k >= n.
  std::vector<bool> leading_ok;
  bool alternating = false;
  bool is_explicit = false;
};

ExplicitnessReport explicitness(const Series& a, int n);

}  // namespace affgrav
