#include "affgrav/diffpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "affgrav/errors.hpp"

namespace affgrav {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) { trim(); }

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

Monomial Monomial::kappa(int order, int power) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  if (power < 0) throw std::invalid_argument("negative exponent");
  std::vector<int> e(static_cast<std::size_t>(order) + 1, 0);
  e.back() = power;
  return Monomial(std::move(e));
}

Monomial Monomial::from_exponents(std::vector<int> exps) {
  if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; }))
    throw std::invalid_argument("negative exponent");
  return Monomial(std::move(exps));
}

int Monomial::exponent(int order) const {
  if (order < 0 || order > max_order()) return 0;
  return exps_[static_cast<std::size_t>(order)];
}

int Monomial::total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

int Monomial::odd_degree() const {
  int d = 0;
  for (std::size_t i = 1; i < exps_.size(); i += 2) d += exps_[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<int> e(std::max(exps_.size(), o.exps_.size()), 0);
  for (std::size_t i = 0; i < exps_.size(); ++i) e[i] += exps_[i];
  for (std::size_t i = 0; i < o.exps_.size(); ++i) e[i] += o.exps_[i];
  return Monomial(std::move(e));
}

bool operator<(const Monomial& x, const Monomial& y) {
  const int dx = x.total_degree();
  const int dy = y.total_degree();
  if (dx != dy) return dx < dy;
  const std::size_t n = std::max(x.exps_.size(), y.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int ex = i < x.exps_.size() ? x.exps_[i] : 0;
    const int ey = i < y.exps_.size() ? y.exps_[i] : 0;
    if (ex != ey) return ex < ey;
  }
  return false;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = max_order(); i >= 0; --i) {
    const int e = exps_[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += 'k' + std::to_string(i);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

int odd_degree(const Monomial& m) { return m.odd_degree(); }

std::string GradedClass::to_string() const {
  return std::string(parity == Parity::even ? "P" : "Q") + "^" + std::to_string(k);
}

GradedClass class_product_bound(const GradedClass& c1, const GradedClass& c2) {
  return {std::max(c1.k, c2.k), c1.parity + c2.parity};
}

DiffPoly::DiffPoly(QR2Scalar c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

DiffPoly::DiffPoly(const Monomial& m, QR2Scalar c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

DiffPoly DiffPoly::kappa(int order, int power) { return DiffPoly(Monomial::kappa(order, power)); }

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

QR2Scalar DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QR2Scalar{} : it->second;
}

int DiffPoly::max_order() const {
  int k = -1;
  for (const auto& [m, c] : terms_) k = std::max(k, m.max_order());
  return k;
}

void DiffPoly::add_term(const Monomial& m, const QR2Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const QR2Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

DiffPoly operator*(const DiffPoly& x, const DiffPoly& y) {
  DiffPoly r;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
  return r;
}

DiffPoly DiffPoly::differentiate() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    const auto e = m.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      // e_i * k_i^{e_i - 1} * k_{i+1}
      std::vector<int> ne(e.begin(), e.end());
      ne[i] -= 1;
      if (ne.size() <= i + 1) ne.resize(i + 2, 0);
      ne[i + 1] += 1;
      r.add_term(Monomial::from_exponents(std::move(ne)), c * QR2Scalar(e[i]));
    }
  }
  return r;
}

DiffPoly DiffPoly::kill_odd_derivatives() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_)
    if (m.odd_degree() == 0) r.terms_.emplace(m, c);
  return r;
}

double DiffPoly::substitute(const std::map<int, double>& assign) const {
  std::vector<int> missing;
  for (const auto& [m, c] : terms_) {
    const auto e = m.exponents();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0 && !assign.contains(static_cast<int>(i))) missing.push_back(static_cast<int>(i));
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    throw MissingAssignment(std::move(missing));
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c.to_double();
    const auto e = m.exponents();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) v *= std::pow(assign.at(static_cast<int>(i)), e[i]);
    sum += v;
  }
  return sum;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += '(' + c.to_string() + ')';
    if (!m.is_constant()) out += '*' + m.to_string();
  }
  return out;
}

DiffPoly scale(const QR2Scalar& alpha, const DiffPoly& p) { return alpha * p; }
DiffPoly differentiate(const DiffPoly& p) { return p.differentiate(); }
DiffPoly kill_odd_derivatives(const DiffPoly& p) { return p.kill_odd_derivatives(); }
double substitute(const DiffPoly& p, const std::map<int, double>& assign) { return p.substitute(assign); }

bool in_class(const DiffPoly& p, const GradedClass& cls) {
  if (p.is_zero()) return true;
  if (cls.k < 0) return cls.parity == Parity::even && p.is_constant();
  for (const auto& [m, c] : p.terms()) {
    if (m.max_order() > cls.k) return false;
    if (parity_of(m.odd_degree()) != cls.parity) return false;
  }
  return true;
}

}  // namespace affgrav
