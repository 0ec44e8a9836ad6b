#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "affgrav/scalar.hpp"

namespace affgrav {

/// Power product (k0)^e0 (k1)^e1 ... of derivatives of the affine curvature,
/// where ki stands for the i-th derivative of kappa.
///
/// Stored densely by derivative order with trailing zero exponents trimmed,
/// so the empty product is the constant monomial 1.
class Monomial {
 public:
  Monomial() = default;
  static Monomial kappa(int order, int power = 1);
  /// exps[i] is the exponent of k_i.
  static Monomial from_exponents(std::vector<int> exps);

  int exponent(int order) const;
  /// Highest derivative order present, -1 for the constant monomial.
  int max_order() const { return static_cast<int>(exps_.size()) - 1; }
  int total_degree() const;
  /// Sum of the exponents of odd-order derivatives.
  int odd_degree() const;
  bool is_constant() const { return exps_.empty(); }
  std::span<const int> exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;

  /// Graded lexicographic: total degree first, then the exponent vector.
  friend bool operator<(const Monomial& x, const Monomial& y);
  friend bool operator==(const Monomial& x, const Monomial& y) = default;

  /// "k2*k0^2"; empty string for the constant monomial.
  std::string to_string() const;

 private:
  explicit Monomial(std::vector<int> exps);
  void trim();
  std::vector<int> exps_;
};

int odd_degree(const Monomial& m);

enum class Parity { even, odd };

inline Parity parity_of(int n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }
inline Parity operator+(Parity x, Parity y) { return x == y ? Parity::even : Parity::odd; }

/// The class P^{k,sigma}: polynomials in k0..kk whose monomials all have odd
/// degree of parity sigma. For k < 0 the even class is the constants and the
/// odd class is {0}.
struct GradedClass {
  int k = 0;
  Parity parity = Parity::even;

  static GradedClass of(int k, int sigma) { return {k, parity_of(sigma)}; }
  friend bool operator==(const GradedClass&, const GradedClass&) = default;
  std::string to_string() const;
};

/// P^{k,s} * P^{l,t} lands in P^{max(k,l), s+t}.
GradedClass class_product_bound(const GradedClass& c1, const GradedClass& c2);

/// Differential polynomial in kappa and its derivatives over Q(sqrt2).
class DiffPoly {
 public:
  using TermMap = std::map<Monomial, QR2Scalar>;

  DiffPoly() = default;
  DiffPoly(QR2Scalar c);  // NOLINT: constants convert implicitly
  DiffPoly(std::int64_t c) : DiffPoly(QR2Scalar(c)) {}  // NOLINT
  DiffPoly(const Monomial& m, QR2Scalar c = QR2Scalar(1));

  /// The polynomial k_order.
  static DiffPoly kappa(int order, int power = 1);

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the empty monomial).
  QR2Scalar constant_term() const { return coefficient(Monomial{}); }
  QR2Scalar coefficient(const Monomial& m) const;
  /// Highest derivative order occurring, -1 for constants (and zero).
  int max_order() const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  DiffPoly& operator*=(const QR2Scalar& c);

  friend DiffPoly operator+(DiffPoly x, const DiffPoly& y) { return x += y; }
  friend DiffPoly operator-(DiffPoly x, const DiffPoly& y) { return x -= y; }
  friend DiffPoly operator*(const DiffPoly& x, const DiffPoly& y);
  friend DiffPoly operator*(DiffPoly x, const QR2Scalar& c) { return x *= c; }
  friend DiffPoly operator*(const QR2Scalar& c, DiffPoly x) { return x *= c; }
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  /// Total derivative d/ds with d/ds k_i = k_{i+1}.
  DiffPoly differentiate() const;

  /// Sets every odd-order derivative to zero, i.e. keeps the odd-degree-0 part.
  DiffPoly kill_odd_derivatives() const;

  /// Numeric value with k_i replaced by assign[i]. Orders occurring in the
  /// polynomial but absent from `assign` raise MissingAssignment.
  double substitute(const std::map<int, double>& assign) const;

  /// "(-1/6)*k0 + (1/120)*k2*k0^2"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const QR2Scalar& c);
  TermMap terms_;
};

DiffPoly scale(const QR2Scalar& alpha, const DiffPoly& p);
DiffPoly differentiate(const DiffPoly& p);
DiffPoly kill_odd_derivatives(const DiffPoly& p);
double substitute(const DiffPoly& p, const std::map<int, double>& assign);

/// Membership test for P^{k,sigma}; the zero polynomial belongs to every class.
bool in_class(const DiffPoly& p, const GradedClass& cls);

}  // namespace affgrav
