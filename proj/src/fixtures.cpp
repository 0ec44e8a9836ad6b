#include "affgrav/fixtures.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace affgrav {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string item(text.substr(0, comma));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(v))
      throw std::invalid_argument("bad number '" + item + "' in " + std::string(what));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw std::invalid_argument("trailing comma in " + std::string(what));
  }
  return out;
}

Fixture constant_kappa(std::string name, ParametricCurveSpec spec, double k, double sweep) {
  Fixture fx;
  fx.name = std::move(name);
  fx.spec = std::move(spec);
  fx.kappa = [k](double) { return k; };
  fx.kappa_prime = [](double) { return 0.0; };
  fx.sweep_lo = -sweep;
  fx.sweep_hi = sweep;
  return fx;
}

}  // namespace

double Fixture::kappa_derivative(int i, double s) const {
  if (i < 0) throw std::invalid_argument("negative derivative order");
  if (poly.empty()) return i == 0 ? kappa(s) : 0.0;
  double sum = 0.0;
  for (std::size_t j = poly.size(); j-- > static_cast<std::size_t>(i);) {
    double falling = 1.0;
    for (int m = 0; m < i; ++m) falling *= static_cast<double>(j) - m;
    sum = sum * s + falling * poly[j];
  }
  return sum;
}

Fixture parse_fixture(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_args = [&] {
    if (colon != std::string_view::npos) throw std::invalid_argument(std::string(head) + " takes no parameters");
  };

  if (head == "parabola") {
    no_args();
    ParametricCurveSpec p;
    p.position = [](double u) { return Vec2{u, 0.5 * u * u}; };
    p.d1 = [](double u) { return Vec2{1.0, u}; };
    p.d2 = [](double) { return Vec2{0.0, 1.0}; };
    p.d3 = [](double) { return Vec2{0.0, 0.0}; };
    p.u_min = -2.0;
    p.u_max = 2.0;
    return constant_kappa("parabola", std::move(p), 0.0, 1.2);
  }
  if (head == "circle") {
    no_args();
    ParametricCurveSpec p;
    p.position = [](double u) { return Vec2{std::cos(u), std::sin(u)}; };
    p.d1 = [](double u) { return Vec2{-std::sin(u), std::cos(u)}; };
    p.d2 = [](double u) { return Vec2{-std::cos(u), -std::sin(u)}; };
    p.d3 = [](double u) { return Vec2{std::sin(u), -std::cos(u)}; };
    p.u_min = -std::numbers::pi;
    p.u_max = std::numbers::pi;
    return constant_kappa("circle", std::move(p), 1.0, 2.4);
  }
  if (head == "ellipse") {
    const auto v = parse_numbers(args, "ellipse parameters");
    if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > 0.0))
      throw std::invalid_argument("ellipse needs two positive semi-axes, e.g. ellipse:2,1");
    const double a = v[0], b = v[1];
    ParametricCurveSpec p;
    p.position = [a, b](double u) { return Vec2{a * std::cos(u), b * std::sin(u)}; };
    p.d1 = [a, b](double u) { return Vec2{-a * std::sin(u), b * std::cos(u)}; };
    p.d2 = [a, b](double u) { return Vec2{-a * std::cos(u), -b * std::sin(u)}; };
    p.d3 = [a, b](double u) { return Vec2{a * std::sin(u), -b * std::cos(u)}; };
    p.u_min = -std::numbers::pi;
    p.u_max = std::numbers::pi;
    const double scale = std::cbrt(a * b);
    return constant_kappa("ellipse:" + std::string(args), std::move(p), 1.0 / (scale * scale), 2.4 * scale);
  }
  if (head == "hyperbola") {
    no_args();
    // upper branch y = sqrt(1 + x^2), oriented so that [c_u, c_uu] = 1
    ParametricCurveSpec p;
    p.position = [](double u) { return Vec2{std::sinh(u), std::cosh(u)}; };
    p.d1 = [](double u) { return Vec2{std::cosh(u), std::sinh(u)}; };
    p.d2 = [](double u) { return Vec2{std::sinh(u), std::cosh(u)}; };
    p.d3 = [](double u) { return Vec2{std::cosh(u), std::sinh(u)}; };
    p.u_min = -1.5;
    p.u_max = 1.5;
    return constant_kappa("hyperbola", std::move(p), -1.0, 1.0);
  }
  if (head == "kappa-poly") {
    auto c = parse_numbers(args, "kappa-poly coefficients");
    if (c.empty()) throw std::invalid_argument("kappa-poly needs at least one coefficient");
    Fixture fx;
    fx.name = "kappa-poly:" + std::string(args);
    fx.poly = c;
    fx.kappa = [c](double s) {
      double r = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * s + *it;
      return r;
    };
    fx.kappa_prime = [c](double s) {
      double r = 0.0;
      for (std::size_t j = c.size(); j-- > 1;) r = r * s + static_cast<double>(j) * c[j];
      return r;
    };
    fx.spec = KappaCurveSpec{fx.kappa, 1.5};
    fx.sweep_lo = -0.8;
    fx.sweep_hi = 0.8;
    return fx;
  }
  throw std::invalid_argument("unknown fixture '" + std::string(text) +
                              "' (expected parabola, circle, ellipse:a,b, hyperbola or kappa-poly:c0,c1,...)");
}

std::vector<double> sweep_points(const Fixture& fx, int n) {
  if (n < 1) throw std::invalid_argument("sweep needs at least one base point");
  if (n == 1) return {0.5 * (fx.sweep_lo + fx.sweep_hi)};
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = fx.sweep_lo + (fx.sweep_hi - fx.sweep_lo) * i / (n - 1);
  return pts;
}

}  // namespace affgrav
