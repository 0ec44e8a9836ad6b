#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "affgrav/numcurve.hpp"

namespace affgrav {

/// Built-in test curves. Names: parabola, circle, ellipse:a,b, hyperbola,
/// kappa-poly:c0,c1,... (kappa(s) = sum c_i s^i).
struct Fixture {
  std::string name;
  CurveSpec spec;
  /// Affine curvature and its derivative as functions of affine arclength
  /// measured from the base point.
  std::function<double(double)> kappa;
  std::function<double(double)> kappa_prime;
  /// Coefficients c_i of kappa-poly fixtures, empty otherwise.
  std::vector<double> poly;
  /// Range of base points used by --sweep.
  double sweep_lo = 0.0;
  double sweep_hi = 0.0;

  /// kappa^{(i)} at s, i >= 0. Conics have constant curvature.
  double kappa_derivative(int i, double s) const;
};

/// Throws std::invalid_argument on unknown names or malformed parameters.
Fixture parse_fixture(std::string_view text);

/// n evenly spaced base points over the fixture's sweep range.
std::vector<double> sweep_points(const Fixture& fx, int n);

}  // namespace affgrav
