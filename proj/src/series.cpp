#include "affgrav/series.hpp"

#include <cmath>
#include <functional>

#include "affgrav/errors.hpp"

namespace affgrav {

namespace {

void require_length(std::span<const DiffPoly> a, int last_index, const char* what) {
  if (static_cast<int>(a.size()) <= last_index)
    throw SeriesError(std::string(what) + ": coefficient a_" + std::to_string(last_index) +
                      " is beyond the supplied sequence");
}

void require_bell_range(int k, int l) {
  if (l < 1 || l > k)
    throw SeriesError("Bell polynomial B_{" + std::to_string(k) + "," + std::to_string(l) +
                      "} requires 1 <= l <= k");
}

/// pow[l][k] = (a^{*l})_k for 1 <= l <= max_power, k <= max_index.
std::vector<std::vector<DiffPoly>> conv_powers(std::span<const DiffPoly> a, int max_power, int max_index) {
  std::vector<std::vector<DiffPoly>> pow(static_cast<std::size_t>(max_power) + 1,
                                         std::vector<DiffPoly>(static_cast<std::size_t>(max_index) + 1));
  if (max_power < 1) return pow;
  for (int k = 1; k <= max_index; ++k) pow[1][static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)];
  for (int l = 2; l <= max_power; ++l)
    for (int k = l; k <= max_index; ++k)
      pow[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] =
          conv(a, pow[static_cast<std::size_t>(l) - 1], k);
  return pow;
}

/// alpha_i = i! a_i, the exponential normalization of an ordinary sequence.
std::vector<DiffPoly> exponential_rescale(std::span<const DiffPoly> a, int max_index) {
  std::vector<DiffPoly> alpha(static_cast<std::size_t>(max_index) + 1);
  for (int i = 1; i <= max_index; ++i)
    alpha[static_cast<std::size_t>(i)] = QR2Scalar(factorial(i)) * a[static_cast<std::size_t>(i)];
  return alpha;
}

bool is_nonzero_constant(const DiffPoly& p) { return p.is_constant() && !p.is_zero(); }

}  // namespace

Series::Series(int order) {
  if (order < 0) throw SeriesError("series order must be non-negative");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

Series::Series(std::vector<DiffPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw SeriesError("series needs at least the constant coefficient");
}

Series Series::identity(int order) {
  Series s(order);
  if (order >= 1) s[1] = DiffPoly(1);
  return s;
}

Series Series::truncated(int order) const {
  if (order > this->order()) throw SeriesError("cannot truncate to a higher order");
  return Series(std::vector<DiffPoly>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Series Series::derivative() const {
  if (order() == 0) return Series(0);
  Series d(order() - 1);
  for (int k = 1; k <= order(); ++k) d[k - 1] = QR2Scalar(k) * (*this)[k];
  return d;
}

Series Series::map(DiffPoly (*fn)(const DiffPoly&)) const {
  Series r(order());
  for (int k = 0; k <= order(); ++k) r[k] = fn((*this)[k]);
  return r;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Series operator+(const Series& x, const Series& y) {
  Series r(std::min(x.order(), y.order()));
  for (int k = 0; k <= r.order(); ++k) r[k] = x[k] + y[k];
  return r;
}

Series operator-(const Series& x, const Series& y) { return x + (-y); }

Series operator*(const Series& x, const Series& y) {
  Series r(std::min(x.order(), y.order()));
  for (int k = 0; k <= r.order(); ++k)
    for (int i = 0; i <= k; ++i) {
      if (x[i].is_zero() || y[k - i].is_zero()) continue;
      r[k] += x[i] * y[k - i];
    }
  return r;
}

Series operator*(const QR2Scalar& c, const Series& x) {
  Series r = x;
  for (auto& p : r.coeffs_) p *= c;
  return r;
}

double Series::evaluate(const std::map<int, double>& assign, double t) const {
  // Horner from the top coefficient down
  double v = 0.0;
  for (int k = order(); k >= 0; --k) v = v * t + (*this)[k].substitute(assign);
  return v;
}

DiffPoly conv(std::span<const DiffPoly> a, std::span<const DiffPoly> b, int k) {
  if (k < 1) throw SeriesError("weighted convolution index must be >= 1");
  DiffPoly r;
  if (k < 2) return r;
  require_length(a, k - 1, "conv");
  require_length(b, k - 1, "conv");
  for (int l = 1; l <= k - 1; ++l) {
    const DiffPoly& al = a[static_cast<std::size_t>(l)];
    const DiffPoly& bl = b[static_cast<std::size_t>(k - l)];
    if (al.is_zero() || bl.is_zero()) continue;
    r += QR2Scalar(Rational(binomial(k, l))) * (al * bl);
  }
  return r;
}

DiffPoly bell(int k, int l, std::span<const DiffPoly> a) {
  require_bell_range(k, l);
  const int m = k - l + 1;
  require_length(a, m, "bell");

  // Scaled arguments a_i / i!, and their powers on demand.
  std::vector<DiffPoly> scaled(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i)
    scaled[static_cast<std::size_t>(i)] = QR2Scalar(1 / factorial(i)) * a[static_cast<std::size_t>(i)];

  DiffPoly total;
  std::vector<int> j(static_cast<std::size_t>(m) + 1, 0);
  // Recursive enumeration over j_i from the largest part down.
  std::function<void(int, int, int)> visit = [&](int i, int parts_left, int weight_left) {
    if (i == 0) {
      if (parts_left != 0 || weight_left != 0) return;
      Rational w = factorial(k);
      DiffPoly term(1);
      for (int t = 1; t <= m; ++t) {
        const int jt = j[static_cast<std::size_t>(t)];
        if (jt == 0) continue;
        w /= factorial(jt);
        for (int r = 0; r < jt; ++r) term *= scaled[static_cast<std::size_t>(t)];
      }
      total += QR2Scalar(w) * term;
      return;
    }
    for (int ji = std::min(parts_left, weight_left / i); ji >= 0; --ji) {
      j[static_cast<std::size_t>(i)] = ji;
      visit(i - 1, parts_left - ji, weight_left - ji * i);
    }
    j[static_cast<std::size_t>(i)] = 0;
  };
  visit(m, l, k);
  return total;
}

DiffPoly bell_via_conv(int k, int l, std::span<const DiffPoly> a) {
  require_bell_range(k, l);
  require_length(a, k - l + 1, "bell_via_conv");
  // Only a_1..a_{k-l+1} may enter; the copy keeps higher entries out.
  std::vector<DiffPoly> head(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k - l + 1; ++i) head[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  const auto powers = conv_powers(head, l, k);
  return QR2Scalar(1 / factorial(l)) * powers[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
}

DiffPoly ordinary_bell(int k, int l, std::span<const DiffPoly> a) {
  require_bell_range(k, l);
  require_length(a, k - l + 1, "ordinary_bell");
  std::vector<DiffPoly> head(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k - l + 1; ++i) head[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  const auto alpha = exponential_rescale(head, k);
  return QR2Scalar(factorial(l) / factorial(k)) * bell_via_conv(k, l, alpha);
}

Series compose(const Series& b, const Series& a) {
  if (a.order() != b.order()) throw SeriesError("compose: truncation orders differ");
  if (!a[0].is_zero()) throw SeriesError("compose: inner series has a nonzero constant term");
  if (!b[0].is_zero()) throw SeriesError("compose: outer series has a nonzero constant term");
  const int n = a.order();
  // chi_k = sum_l b_l [s^k] a^l, with [s^k] a^l = (alpha^{*l})_k / k!.
  // pow[l][k] depends on alpha_1..alpha_{k-l+1} only.
  const auto alpha = exponential_rescale(a.coeffs(), n);
  const auto powers = conv_powers(alpha, n, n);
  Series chi(n);
  for (int k = 1; k <= n; ++k) {
    DiffPoly sum;
    for (int l = 1; l <= k; ++l) {
      const DiffPoly& bl = b[l];
      if (bl.is_zero()) continue;
      sum += bl * powers[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
    }
    chi[k] = QR2Scalar(1 / factorial(k)) * sum;
  }
  return chi;
}

Series comp_inverse(const Series& a) {
  const int n = a.order();
  if (n < 1) throw SeriesError("comp_inverse: order must be >= 1");
  if (!a[0].is_zero()) throw SeriesError("comp_inverse: nonzero constant term");
  if (!is_nonzero_constant(a[1]))
    throw SeriesError("comp_inverse: a_1 must be a nonzero constant, got " + a[1].to_string());
  const QR2Scalar a1 = a[1].constant_term();
  const auto alpha = exponential_rescale(a.coeffs(), n);
  const auto powers = conv_powers(alpha, n, n);

  Series b(n);
  b[1] = DiffPoly(a1.inverse());
  for (int k = 2; k <= n; ++k) {
    DiffPoly sum = b[1] * a[k];
    const QR2Scalar to_ordinary(1 / factorial(k));
    for (int l = 2; l <= k - 1; ++l) {
      if (b[l].is_zero()) continue;
      sum += b[l] * (to_ordinary * powers[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]);
    }
    b[k] = -pow(a1, -k) * sum;
  }
  return b;
}

Series sqrt_series(const Series& a, int sign) {
  if (sign != 1 && sign != -1) throw SeriesError("sqrt_series: sign must be +1 or -1");
  const int n = a.order();
  if (n < 2) throw SeriesError("sqrt_series: order must be >= 2");
  if (!a[0].is_zero() || !a[1].is_zero()) throw SeriesError("sqrt_series: a_0 and a_1 must vanish");
  if (!is_nonzero_constant(a[2])) throw SeriesError("sqrt_series: a_2 must be a nonzero constant");
  const QR2Scalar a2 = a[2].constant_term();
  if (a2.sign() <= 0) throw SeriesError("sqrt_series: a_2 must be positive");
  const auto root = a2.sqrt();
  if (!root) throw SeriesError("sqrt_series: sqrt(a_2) is not in Q(sqrt2) for a_2 = " + a2.to_string());

  Series b(n - 1);
  const QR2Scalar b1 = sign > 0 ? *root : -*root;
  b[1] = DiffPoly(b1);
  const QR2Scalar half_inv = (QR2Scalar(2) * b1).inverse();
  for (int k = 2; k <= n - 1; ++k) {
    DiffPoly sum = a[k + 1];
    for (int l = 2; l <= k - 1; ++l) sum -= b[l] * b[k + 1 - l];
    b[k] = half_inv * sum;
  }
  return b;
}

bool is_alternating(const Series& a, int n, int sigma) {
  for (int k = 0; k <= a.order(); ++k)
    if (!in_class(a[k], GradedClass::of(k - n, k + sigma))) return false;
  return true;
}

ExplicitnessReport explicitness(const Series& a, int n) {
  ExplicitnessReport rep;
  rep.n = n;
  const auto len = static_cast<std::size_t>(a.order()) + 1;
  rep.leading.resize(len);
  rep.residual.resize(len);
  rep.residual_ok.resize(len);
  rep.leading_ok.resize(len);
  rep.alternating = is_alternating(a, n, n);
  bool ok = rep.alternating;
  for (int k = 0; k <= a.order(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const int top = k - n;
    // negative derivatives of kappa count as zero
    if (top >= 0) {
      const Monomial lead = Monomial::kappa(top);
      rep.leading[i] = a[k].coefficient(lead);
      rep.residual[i] = a[k] - DiffPoly(lead, rep.leading[i]);
      rep.leading_ok[i] = !rep.leading[i].is_zero();
    } else {
      rep.residual[i] = a[k];
      rep.leading_ok[i] = true;
    }
    rep.residual_ok[i] = in_class(rep.residual[i], GradedClass::of(k - n - 1, k - n));
    ok = ok && rep.residual_ok[i] && rep.leading_ok[i];
  }
  rep.is_explicit = ok;
  return rep;
}

}  // namespace affgrav
