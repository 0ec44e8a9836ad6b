#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace affgrav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Row-major 2x2 matrix.
struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

  Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  double determinant() const { return a11 * a22 - a12 * a21; }
  Mat2 inverse() const;
  /// Matrix with columns c1, c2.
  static Mat2 columns(Vec2 c1, Vec2 c2) { return {c1.x, c2.x, c1.y, c2.y}; }
};

/// Curve given by its affine curvature, realized on [-half_width, half_width].
struct KappaCurveSpec {
  std::function<double(double)> kappa;
  double half_width = 1.0;
};

/// Parametric curve u -> c(u) on [u_min, u_max], normalized at u = base_u.
/// Derivatives left empty are taken by central finite differences, which
/// evaluate `position` up to 0.03 outside the interval.
struct ParametricCurveSpec {
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> d1;
  std::function<Vec2(double)> d2;
  std::function<Vec2(double)> d3;
  double u_min = -1.0;
  double u_max = 1.0;
  double base_u = 0.0;
};

using CurveSpec = std::variant<KappaCurveSpec, ParametricCurveSpec>;

/// c(u) -> A c(u) + b, derivatives included.
ParametricCurveSpec transformed(const ParametricCurveSpec& spec, const Mat2& a, Vec2 b);

/// Curve sampled at s_i = (i - origin) * step with position, c' and c''.
/// Freshly built curves satisfy c(0) = 0, c'(0) = e1, c''(0) = e2.
class NumCurve {
 public:
  NumCurve(double step, std::size_t origin, std::vector<Vec2> points, std::vector<Vec2> d1, std::vector<Vec2> d2);

  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t origin() const noexcept { return origin_; }
  double s(std::size_t i) const { return (static_cast<double>(i) - static_cast<double>(origin_)) * step_; }
  double s_min() const { return s(0); }
  double s_max() const { return s(size() - 1); }
  std::vector<double> grid() const;

  std::span<const Vec2> points() const noexcept { return points_; }
  std::span<const Vec2> d1() const noexcept { return d1_; }
  std::span<const Vec2> d2() const noexcept { return d2_; }

  /// max |det[c', c''] - 1| over nodes with s in [lo, hi].
  double max_wronskian_drift(double lo, double hi) const;
  double max_wronskian_drift() const { return max_wronskian_drift(s_min(), s_max()); }

  std::size_t nearest_index(double s) const;

  /// Local cubic through the four nodes around s.
  Vec2 position_at(double s) const;

  /// Same samples, re-centred at the node nearest p and mapped by the
  /// unimodular affine map sending (c(p), c'(p), c''(p)) to (0, e1, e2).
  NumCurve renormalized(double p) const;

 private:
  double step_;
  std::size_t origin_;
  std::vector<Vec2> points_, d1_, d2_;
};

/// Classical RK4 on (c, c', c'') with c''' = -kappa c', started from (0, e1, e2)
/// at s = 0 and integrated in both directions.
NumCurve integrate_from_kappa(const std::function<double(double)>& kappa, double step, double half_width);
NumCurve integrate_from_kappa(const KappaCurveSpec& spec, double step);

/// Resamples a parametric curve on a uniform affine-arclength grid of the
/// given step, with s = 0 at base_u. The arclength
/// sigma(u) = int [c_u, c_uu]^{1/3} du is tabulated by panelwise Simpson
/// outward from base_u and inverted by Newton inside each panel. Throws
/// DegenerateCurve where [c_u, c_uu] <= 0.
NumCurve reparametrize_affine(const ParametricCurveSpec& spec, double step);
/// Same with step = (total affine length) / samples.
NumCurve reparametrize_affine(const ParametricCurveSpec& spec, int samples);

NumCurve realize(const CurveSpec& spec, double step);

/// kappa = det[c'', c'''] with c''' by central differences of the stored c''.
/// Needs two further nodes on each side of the interpolation stencil around s.
double affine_curvature(const NumCurve& curve, double s);

struct GravitySample {
  double delta = 0.0;
  double s_minus = 0.0;
  double s_plus = 0.0;
  double midpoint_x = 0.0;
};

struct DeltaSchedule {
  double delta0 = 1e-3;
  double ratio = 1.6;
  int count = 8;

  std::vector<double> deltas() const;
};

/// Chord midpoints of the line y = delta on a curve normalized at its origin.
/// The two roots of g(s) = delta are bracketed by walking outward from s = 0
/// while g increases, then bisected on the local cubic interpolant of g.
std::vector<GravitySample> gravity_samples(const NumCurve& curve, std::span<const double> deltas);

struct FlatnessResult {
  /// x(delta) = a delta + b delta^2 + c delta^3
  double a = 0.0, b = 0.0, c = 0.0;
  double predicted_b = 0.0;  ///< -kappa'(p)/10
  bool is_flat = false;      ///< |b| <= tol_flat
  bool matches_prediction = false;
  double residual = 0.0;     ///< max |x_i - fit(delta_i)|
};

inline constexpr double kDefaultTolFlat = 1e-3;

FlatnessResult fit_flatness(std::span<const GravitySample> samples, double kappa_prime_p,
                            double tol_flat = kDefaultTolFlat);

struct StraightnessResult {
  double max_dev = 0.0;
  double tolerance = 0.0;
  bool is_straight = false;
};

/// is_straight iff max |midpoint_x| <= tol; tol <= 0 selects 1e-6 * max delta.
StraightnessResult straightness_test(std::span<const GravitySample> samples, double tol_straight = 0.0);

struct SweepPoint {
  double p = 0.0;  ///< node actually used (base points snap to the grid)
  double kappa = 0.0;
  StraightnessResult straightness;
};

struct CorollaryResult {
  std::vector<SweepPoint> points;
  bool all_straight = false;
  double kappa_spread = 0.0;
  bool kappa_constant = false;
  /// all_straight agrees with kappa_constant
  bool consistent = false;
};

struct SweepOptions {
  DeltaSchedule schedule;
  double tol_straight = 0.0;
  double tol_kappa = 1e-5;
};

CorollaryResult corollary_sweep(const NumCurve& curve, std::span<const double> base_points,
                                const SweepOptions& options = {});

}  // namespace affgrav
