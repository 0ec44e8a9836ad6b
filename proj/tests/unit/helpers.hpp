#pragma once

#include <cstdint>
#include <random>

#include "affgrav/diffpoly.hpp"
#include "affgrav/series.hpp"

namespace testing_helpers {

using affgrav::DiffPoly;
using affgrav::QR2Scalar;
using affgrav::Rational;

inline QR2Scalar q(std::int64_t num, std::int64_t den = 1) { return QR2Scalar(Rational(num, den)); }
inline QR2Scalar r2(std::int64_t num, std::int64_t den = 1) { return QR2Scalar(Rational(0), Rational(num, den)); }
inline DiffPoly k(int order, int power = 1) { return DiffPoly::kappa(order, power); }

inline affgrav::Series series(std::initializer_list<DiffPoly> c) { return affgrav::Series(std::vector<DiffPoly>(c)); }

struct TestRng {
  std::mt19937_64 gen{20240611};
  int uniform(int lo, int hi) { return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); }
  QR2Scalar scalar() {
    return QR2Scalar(Rational(uniform(-9, 9), uniform(1, 7)), Rational(uniform(-3, 3), uniform(1, 4)));
  }
};

}  // namespace testing_helpers
