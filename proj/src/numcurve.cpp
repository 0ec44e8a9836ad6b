#include "affgrav/numcurve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "affgrav/errors.hpp"

namespace affgrav {

namespace {

/// Cubic through (-1, v0), (0, v1), (1, v2), (2, v3), evaluated at t.
template <class T>
T lagrange4(const T& v0, const T& v1, const T& v2, const T& v3, double t) {
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * v0 + w1 * v1 + w2 * v2 + w3 * v3;
}

struct Jet {
  Vec2 c, cu, cuu, cuuu;
};

class JetEvaluator {
 public:
  explicit JetEvaluator(const ParametricCurveSpec& spec) : spec_(spec) {
    if (!spec_.position) throw std::invalid_argument("parametric curve needs a position function");
  }

  Jet operator()(double u) const {
    const auto& f = spec_.position;
    Jet j;
    j.c = f(u);
    if (spec_.d1) {
      j.cu = spec_.d1(u);
    } else {
      constexpr double h = 1e-3;
      j.cu = (1.0 / (12.0 * h)) * (f(u - 2 * h) - 8.0 * f(u - h) + 8.0 * f(u + h) - f(u + 2 * h));
    }
    if (spec_.d2) {
      j.cuu = spec_.d2(u);
    } else {
      constexpr double h = 5e-3;
      j.cuu = (1.0 / (12.0 * h * h)) *
              (-1.0 * f(u - 2 * h) + 16.0 * f(u - h) - 30.0 * j.c + 16.0 * f(u + h) - f(u + 2 * h));
    }
    if (spec_.d3) {
      j.cuuu = spec_.d3(u);
    } else {
      constexpr double h = 1e-2;
      j.cuuu = (1.0 / (8.0 * h * h * h)) * (f(u - 3 * h) - 8.0 * f(u - 2 * h) + 13.0 * f(u - h) -
                                             13.0 * f(u + h) + 8.0 * f(u + 2 * h) - f(u + 3 * h));
    }
    return j;
  }

  /// [c_u, c_uu]^{1/3}, rejecting degenerate points.
  double speed(double u) const {
    const Jet j = (*this)(u);
    const double w = det(j.cu, j.cuu);
    if (!(w > 0.0)) throw DegenerateCurve(u);
    return std::cbrt(w);
  }

 private:
  const ParametricCurveSpec& spec_;
};

/// Cumulative affine arclength on one side of the base point; node i sits at
/// u = base + dir * i * du.
struct ArclengthSide {
  int dir = 1;
  double du = 0.0;
  std::vector<double> sigma;
  std::vector<double> speed;
};

ArclengthSide tabulate_side(const JetEvaluator& jet, double base, double length, int dir, double du_target) {
  ArclengthSide side;
  side.dir = dir;
  const int panels = std::max(1, static_cast<int>(std::ceil(length / du_target)));
  side.du = length / panels;
  side.sigma.assign(static_cast<std::size_t>(panels) + 1, 0.0);
  side.speed.resize(static_cast<std::size_t>(panels) + 1);
  side.speed[0] = jet.speed(base);
  for (int i = 1; i <= panels; ++i) {
    const double tau = i * side.du;
    const double mid = jet.speed(base + dir * (tau - 0.5 * side.du));
    side.speed[static_cast<std::size_t>(i)] = jet.speed(base + dir * tau);
    side.sigma[static_cast<std::size_t>(i)] =
        side.sigma[static_cast<std::size_t>(i) - 1] +
        side.du / 6.0 * (side.speed[static_cast<std::size_t>(i) - 1] + 4.0 * mid + side.speed[static_cast<std::size_t>(i)]);
  }
  return side;
}

/// Offset tau >= 0 from the base with sigma(base + dir*tau) = s.
double invert_side(const JetEvaluator& jet, const ArclengthSide& side, double base, double s) {
  const auto& sg = side.sigma;
  auto it = std::upper_bound(sg.begin(), sg.end(), s);
  std::size_t i = it == sg.begin() ? 0 : static_cast<std::size_t>(it - sg.begin()) - 1;
  i = std::min(i, sg.size() - 2);
  const double tau0 = static_cast<double>(i) * side.du;
  const double span = sg[i + 1] - sg[i];
  double tau = tau0 + side.du * (s - sg[i]) / span;
  for (int iter = 0; iter < 20; ++iter) {
    const double mid = jet.speed(base + side.dir * 0.5 * (tau0 + tau));
    const double q = jet.speed(base + side.dir * tau);
    const double partial = (tau - tau0) / 6.0 * (side.speed[i] + 4.0 * mid + q);
    const double step = (sg[i] + partial - s) / q;
    tau -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(tau))) break;
  }
  return tau;
}

struct Frame {
  Vec2 c, d1, d2;
};

Frame affine_frame(const Jet& j) {
  const double w = det(j.cu, j.cuu);
  const double wp = det(j.cu, j.cuuu);
  const double q = std::cbrt(w);
  // du/ds = w^{-1/3}, d2u/ds2 = -w' / (3 w^{5/3})
  return {j.c, (1.0 / q) * j.cu, (1.0 / (q * q)) * j.cuu - (wp / (3.0 * w * q * q)) * j.cu};
}

void normalize_at(std::size_t origin, std::vector<Vec2>& pts, std::vector<Vec2>& d1, std::vector<Vec2>& d2) {
  const Vec2 c0 = pts[origin];
  const Mat2 a = Mat2::columns(d1[origin], d2[origin]).inverse();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = a * (pts[i] - c0);
    d1[i] = a * d1[i];
    d2[i] = a * d2[i];
  }
}

}  // namespace

Mat2 Mat2::inverse() const {
  const double d = determinant();
  if (d == 0.0) throw std::domain_error("singular 2x2 matrix");
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

ParametricCurveSpec transformed(const ParametricCurveSpec& spec, const Mat2& a, Vec2 b) {
  ParametricCurveSpec out = spec;
  out.position = [f = spec.position, a, b](double u) { return a * f(u) + b; };
  auto lin = [a](const std::function<Vec2(double)>& d) -> std::function<Vec2(double)> {
    if (!d) return {};
    return [d, a](double u) { return a * d(u); };
  };
  out.d1 = lin(spec.d1);
  out.d2 = lin(spec.d2);
  out.d3 = lin(spec.d3);
  return out;
}

NumCurve::NumCurve(double step, std::size_t origin, std::vector<Vec2> points, std::vector<Vec2> d1,
                   std::vector<Vec2> d2)
    : step_(step), origin_(origin), points_(std::move(points)), d1_(std::move(d1)), d2_(std::move(d2)) {
  if (!(step_ > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (points_.empty() || points_.size() != d1_.size() || points_.size() != d2_.size())
    throw std::invalid_argument("curve arrays must be non-empty and of equal length");
  if (origin_ >= points_.size()) throw std::invalid_argument("origin outside the grid");
}

std::vector<double> NumCurve::grid() const {
  std::vector<double> g(size());
  for (std::size_t i = 0; i < size(); ++i) g[i] = s(i);
  return g;
}

double NumCurve::max_wronskian_drift(double lo, double hi) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double si = s(i);
    if (si < lo - 1e-12 || si > hi + 1e-12) continue;
    worst = std::max(worst, std::abs(det(d1_[i], d2_[i]) - 1.0));
  }
  return worst;
}

std::size_t NumCurve::nearest_index(double s) const {
  const double idx = std::round(s / step_) + static_cast<double>(origin_);
  if (idx < 0.0 || idx > static_cast<double>(size() - 1))
    throw std::out_of_range("s = " + std::to_string(s) + " outside the sampled curve");
  return static_cast<std::size_t>(idx);
}

Vec2 NumCurve::position_at(double s) const {
  if (size() < 4) throw std::out_of_range("need at least four nodes to interpolate");
  if (s < s_min() || s > s_max()) throw std::out_of_range("s = " + std::to_string(s) + " outside the sampled curve");
  const double x = (s - s_min()) / step_;
  auto i = static_cast<std::ptrdiff_t>(std::floor(x)) - 1;
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(size()) - 4);
  const double t = x - static_cast<double>(i + 1);
  const auto k = static_cast<std::size_t>(i);
  return lagrange4(points_[k], points_[k + 1], points_[k + 2], points_[k + 3], t);
}

NumCurve NumCurve::renormalized(double p) const {
  const std::size_t ip = nearest_index(p);
  std::vector<Vec2> pts = points_, a = d1_, b = d2_;
  normalize_at(ip, pts, a, b);
  return NumCurve(step_, ip, std::move(pts), std::move(a), std::move(b));
}

NumCurve integrate_from_kappa(const std::function<double(double)>& kappa, double step, double half_width) {
  if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!(half_width >= step)) throw std::invalid_argument("integration domain is empty");
  if (!kappa) throw std::invalid_argument("kappa function is empty");
  const auto n = static_cast<std::size_t>(std::floor(half_width / step + 1e-9));
  std::vector<Vec2> pts(2 * n + 1), d1(2 * n + 1), d2(2 * n + 1);
  pts[n] = {0.0, 0.0};
  d1[n] = {1.0, 0.0};
  d2[n] = {0.0, 1.0};

  using State = std::array<Vec2, 3>;
  auto rhs = [&](double s, const State& y) -> State { return {y[1], y[2], -kappa(s) * y[1]}; };
  auto axpy = [](const State& y, double h, const State& k) -> State {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
  };

  for (int dir : {1, -1}) {
    const double h = dir * step;
    State y{pts[n], d1[n], d2[n]};
    for (std::size_t m = 0; m < n; ++m) {
      const double s = dir * static_cast<double>(m) * step;
      const State k1 = rhs(s, y);
      const State k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
      const State k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
      const State k4 = rhs(s + h, axpy(y, h, k3));
      for (int c = 0; c < 3; ++c) y[c] = y[c] + (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      const std::size_t idx = dir > 0 ? n + m + 1 : n - m - 1;
      pts[idx] = y[0];
      d1[idx] = y[1];
      d2[idx] = y[2];
    }
  }
  return NumCurve(step, n, std::move(pts), std::move(d1), std::move(d2));
}

NumCurve integrate_from_kappa(const KappaCurveSpec& spec, double step) {
  return integrate_from_kappa(spec.kappa, step, spec.half_width);
}

NumCurve reparametrize_affine(const ParametricCurveSpec& spec, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(spec.u_min <= spec.base_u && spec.base_u <= spec.u_max) || !(spec.u_min < spec.u_max))
    throw std::invalid_argument("base point must lie in a non-empty parameter interval");
  const JetEvaluator jet(spec);
  const double du_target = std::min(step, 1e-2) / 2.0;

  std::vector<Vec2> pts, d1, d2;
  std::size_t origin = 0;
  for (int dir : {-1, 1}) {
    const double length = dir > 0 ? spec.u_max - spec.base_u : spec.base_u - spec.u_min;
    std::vector<Frame> frames;
    if (length > 0.0) {
      const ArclengthSide side = tabulate_side(jet, spec.base_u, length, dir, du_target);
      const double total = side.sigma.back();
      for (int j = 1; j * step <= total * (1.0 + 1e-14); ++j) {
        const double tau = invert_side(jet, side, spec.base_u, j * step);
        frames.push_back(affine_frame(jet(spec.base_u + dir * tau)));
      }
    }
    if (dir < 0) {
      for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
        pts.push_back(it->c);
        d1.push_back(it->d1);
        d2.push_back(it->d2);
      }
      origin = pts.size();
      const Frame f0 = affine_frame(jet(spec.base_u));
      pts.push_back(f0.c);
      d1.push_back(f0.d1);
      d2.push_back(f0.d2);
    } else {
      for (const auto& f : frames) {
        pts.push_back(f.c);
        d1.push_back(f.d1);
        d2.push_back(f.d2);
      }
    }
  }
  normalize_at(origin, pts, d1, d2);
  return NumCurve(step, origin, std::move(pts), std::move(d1), std::move(d2));
}

NumCurve reparametrize_affine(const ParametricCurveSpec& spec, int samples) {
  if (samples < 4) throw std::invalid_argument("need at least 4 samples");
  const JetEvaluator jet(spec);
  const double du = (spec.u_max - spec.u_min) / 4096.0;
  double total = 0.0;
  if (spec.u_max > spec.base_u) total += tabulate_side(jet, spec.base_u, spec.u_max - spec.base_u, 1, du).sigma.back();
  if (spec.base_u > spec.u_min) total += tabulate_side(jet, spec.base_u, spec.base_u - spec.u_min, -1, du).sigma.back();
  return reparametrize_affine(spec, total / samples);
}

NumCurve realize(const CurveSpec& spec, double step) {
  return std::visit(
      [step](const auto& s) -> NumCurve {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KappaCurveSpec>)
          return integrate_from_kappa(s, step);
        else
          return reparametrize_affine(s, step);
      },
      spec);
}

double affine_curvature(const NumCurve& curve, double s) {
  const auto n = static_cast<std::ptrdiff_t>(curve.size());
  const double h = curve.step();
  const double x = (s - curve.s_min()) / h;
  const auto i = static_cast<std::ptrdiff_t>(std::floor(x + 1e-12));
  // stencil i-1..i+2, each node needs two neighbours per side
  if (i - 3 < 0 || i + 4 > n - 1) throw std::out_of_range("s = " + std::to_string(s) + " too close to the grid ends");
  const auto d2 = curve.d2();
  auto kappa_at = [&](std::ptrdiff_t j) {
    const auto k = static_cast<std::size_t>(j);
    const Vec2 c3 = (1.0 / (12.0 * h)) * (d2[k - 2] - 8.0 * d2[k - 1] + 8.0 * d2[k + 1] - d2[k + 2]);
    return det(d2[k], c3);
  };
  const double t = x - static_cast<double>(i);
  if (std::abs(t) < 1e-12) return kappa_at(i);
  return lagrange4(kappa_at(i - 1), kappa_at(i), kappa_at(i + 1), kappa_at(i + 2), t);
}

std::vector<double> DeltaSchedule::deltas() const {
  if (!(delta0 > 0.0) || !(ratio > 0.0) || count < 1) throw std::invalid_argument("invalid delta schedule");
  std::vector<double> d(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) d[static_cast<std::size_t>(i)] = delta0 * std::pow(ratio, i);
  return d;
}

namespace {

struct Root {
  double s;
  double x;
};

/// Walks from the origin in direction dir and returns where y = delta, with x there.
Root chord_root(const NumCurve& curve, double delta, int dir) {
  const auto pts = curve.points();
  const auto n = static_cast<std::ptrdiff_t>(curve.size());
  const auto o = static_cast<std::ptrdiff_t>(curve.origin());
  const char* side = dir > 0 ? "positive" : "negative";
  auto at = [&](std::ptrdiff_t m) { return pts[static_cast<std::size_t>(o + dir * m)]; };
  auto inside = [&](std::ptrdiff_t m) { return o + dir * m >= 0 && o + dir * m <= n - 1; };

  std::ptrdiff_t m = 1;
  while (true) {
    if (!inside(m)) throw NoBracket(delta, side);
    if (at(m).y >= delta) break;
    if (at(m).y <= at(m - 1).y) throw NoBracket(delta, side);
    ++m;
  }
  // bracket between offsets m-1 and m; cubic stencil m-2..m+1 in walk order
  std::ptrdiff_t first = m - 2;
  if (!inside(first)) first = m - 1;
  if (!inside(first + 3)) first = m - 2;
  if (!inside(first) || !inside(first + 3)) throw NoBracket(delta, side);
  const Vec2 v0 = at(first), v1 = at(first + 1), v2 = at(first + 2), v3 = at(first + 3);
  // t is measured in steps from node m-1
  const double shift = static_cast<double>(m - 1 - (first + 1));
  auto y_at = [&](double t) { return lagrange4(v0.y, v1.y, v2.y, v3.y, t + shift); };
  double lo = 0.0, hi = 1.0;
  double t = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    t = 0.5 * (lo + hi);
    const double r = y_at(t) - delta;
    if (std::abs(r) <= 1e-13 || hi - lo <= 4 * std::numeric_limits<double>::epsilon()) break;
    (r < 0.0 ? lo : hi) = t;
  }
  const double offset = static_cast<double>(m - 1) + t;
  return {dir * offset * curve.step(), lagrange4(v0.x, v1.x, v2.x, v3.x, t + shift)};
}

}  // namespace

std::vector<GravitySample> gravity_samples(const NumCurve& curve, std::span<const double> deltas) {
  std::vector<GravitySample> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw std::invalid_argument("chord heights must be positive");
    const Root plus = chord_root(curve, delta, 1);
    const Root minus = chord_root(curve, delta, -1);
    out.push_back({delta, minus.s, plus.s, 0.5 * (minus.x + plus.x)});
  }
  return out;
}

FlatnessResult fit_flatness(std::span<const GravitySample> samples, double kappa_prime_p, double tol_flat) {
  if (samples.size() < 6) throw std::invalid_argument("flatness fit needs at least 6 samples");
  if (!(tol_flat > 0.0)) throw std::invalid_argument("tol_flat must be positive");
  double dmin = samples[0].delta, dmax = samples[0].delta;
  for (const auto& s : samples) {
    dmin = std::min(dmin, s.delta);
    dmax = std::max(dmax, s.delta);
  }
  if (!(dmax >= 10.0 * dmin)) throw std::invalid_argument("chord heights must span at least a decade");

  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = samples[static_cast<std::size_t>(i)].delta / dmax;
    a(i, 0) = z;
    a(i, 1) = z * z;
    a(i, 2) = z * z * z;
    y(i) = samples[static_cast<std::size_t>(i)].midpoint_x;
  }
  const auto qr = a.colPivHouseholderQr();
  if (qr.rank() < 3) throw RankDeficientFit("flatness fit is rank deficient");
  const Eigen::Vector3d z = qr.solve(y);

  FlatnessResult r;
  r.a = z(0) / dmax;
  r.b = z(1) / (dmax * dmax);
  r.c = z(2) / (dmax * dmax * dmax);
  r.predicted_b = kappa_prime_p == 0.0 ? 0.0 : -kappa_prime_p / 10.0;
  r.is_flat = std::abs(r.b) <= tol_flat;
  r.matches_prediction = std::abs(r.b - r.predicted_b) <= std::max(1e-3, 0.05 * std::abs(r.predicted_b));
  r.residual = (a * z - y).cwiseAbs().maxCoeff();
  return r;
}

StraightnessResult straightness_test(std::span<const GravitySample> samples, double tol_straight) {
  if (samples.empty()) throw std::invalid_argument("straightness test needs samples");
  StraightnessResult r;
  double dmax = 0.0;
  for (const auto& s : samples) {
    r.max_dev = std::max(r.max_dev, std::abs(s.midpoint_x));
    dmax = std::max(dmax, s.delta);
  }
  r.tolerance = tol_straight > 0.0 ? tol_straight : 1e-6 * dmax;
  r.is_straight = r.max_dev <= r.tolerance;
  return r;
}

CorollaryResult corollary_sweep(const NumCurve& curve, std::span<const double> base_points,
                                const SweepOptions& options) {
  if (base_points.empty()) throw std::invalid_argument("corollary sweep needs base points");
  const auto deltas = options.schedule.deltas();
  CorollaryResult res;
  res.all_straight = true;
  for (double p : base_points) {
    SweepPoint sp;
    const std::size_t ip = curve.nearest_index(p);
    sp.p = curve.s(ip);
    sp.kappa = affine_curvature(curve, sp.p);
    const NumCurve local = curve.renormalized(sp.p);
    const auto samples = gravity_samples(local, deltas);
    sp.straightness = straightness_test(samples, options.tol_straight);
    res.all_straight = res.all_straight && sp.straightness.is_straight;
    res.points.push_back(sp);
  }
  // kappa over the whole swept range, not only at the base points
  const auto [lo, hi] = std::minmax_element(res.points.begin(), res.points.end(),
                                            [](const SweepPoint& x, const SweepPoint& y) { return x.p < y.p; });
  double kmin = lo->kappa, kmax = lo->kappa;
  const std::size_t i0 = curve.nearest_index(lo->p), i1 = curve.nearest_index(hi->p);
  const std::size_t stride = std::max<std::size_t>(1, (i1 - i0) / 256);
  for (std::size_t i = i0; i <= i1; i += stride) {
    const double k = affine_curvature(curve, curve.s(i));
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  res.kappa_spread = kmax - kmin;
  res.kappa_constant = res.kappa_spread <= options.tol_kappa;
  res.consistent = res.all_straight == res.kappa_constant;
  return res;
}

}  // namespace affgrav
