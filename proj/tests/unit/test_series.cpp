#include <functional>
#include <numeric>

#include "affgrav/errors.hpp"
#include "affgrav/series.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace affgrav;
using testing_helpers::k;
using testing_helpers::q;
using testing_helpers::r2;
using testing_helpers::series;

namespace {

/// Generic symbolic sequence a_i = k_{i-1}, padded at index 0.
std::vector<DiffPoly> generic(int n) {
  std::vector<DiffPoly> a(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i)] = k(i - 1);
  return a;
}

/// B_{n,l}(a) by enumerating set partitions of {1..n} into l blocks as
/// restricted growth strings; each partition contributes prod a_{|block|}.
DiffPoly bell_by_set_partitions(int n, int l, const std::vector<DiffPoly>& a) {
  DiffPoly total;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == n) {
      if (blocks != l) return;
      std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
      for (int b : rgs) ++sizes[static_cast<std::size_t>(b)];
      DiffPoly term(1);
      for (int s : sizes) term = term * a[static_cast<std::size_t>(s)];
      total += term;
      return;
    }
    for (int b = 0; b <= blocks && b < l; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return total;
}

/// b(a(s)) as sum_l b_l a(s)^l with plain Cauchy products.
Series compose_by_powers(const Series& b, const Series& a) {
  Series out(a.order());
  Series apow = a;
  for (int l = 1; l <= b.order(); ++l) {
    for (int i = 0; i <= a.order(); ++i) out[i] += b[l] * apow[i];
    apow = apow * a;
  }
  return out;
}

Series random_constant(testing_helpers::TestRng& rng, int order) {
  Series a(order);
  for (int i = 1; i <= order; ++i) a[i] = rng.scalar();
  while (a[1].is_zero()) a[1] = rng.scalar();
  return a;
}

}  // namespace

TEST_CASE("weighted convolution") {
  std::vector<DiffPoly> ones(4);
  ones[1] = 1;
  CHECK(conv(ones, ones, 2) == DiffPoly(2));
  std::vector<DiffPoly> a(4);
  a[1] = 1;
  a[2] = k(0);
  CHECK(conv(a, a, 3) == q(6) * k(0));
  CHECK(conv(a, a, 1).is_zero());
}

TEST_CASE("Bell polynomial examples") {
  const auto a = generic(9);
  for (int n = 1; n <= 6; ++n) {
    CHECK(bell(n, 1, a) == a[static_cast<std::size_t>(n)]);
    CHECK(bell(n, n, a) == k(0, n));
  }
  CHECK(bell(3, 2, a) == q(3) * a[1] * a[2]);
  CHECK(bell_via_conv(4, 2, a) == q(3) * a[2] * a[2] + q(4) * a[1] * a[3]);
  std::vector<DiffPoly> one(3);
  one[1] = 1;
  CHECK(bell_via_conv(2, 2, one) == DiffPoly(1));
  CHECK_THROWS_AS(bell(3, 4, a), SeriesError);
  CHECK_THROWS_AS(bell_via_conv(2, 0, a), SeriesError);
}

TEST_CASE("Bell polynomials agree with set-partition enumeration and the convolution identity") {
  const auto a = generic(9);
  for (int n = 1; n <= 9; ++n)
    for (int l = 1; l <= n; ++l) {
      const DiffPoly oracle = bell_by_set_partitions(n, l, a);
      CHECK(bell(n, l, a) == oracle);
      CHECK(bell_via_conv(n, l, a) == oracle);
    }
}

TEST_CASE("composition") {
  const Series id = Series::identity(4);
  const Series a = series({0, 1, 1, 0, 0});
  const Series sq = series({0, 0, 1, 0, 0});
  CHECK(compose(sq, id) == sq);
  CHECK(compose(id, a) == a);
  CHECK(compose(sq, a) == series({0, 0, 1, 2, 1}));
  CHECK_THROWS_AS(compose(sq, series({1, 1, 0, 0, 0})), SeriesError);
  CHECK_THROWS_AS(compose(sq, Series::identity(5)), SeriesError);
}

TEST_CASE("composition matches direct expansion on symbolic series") {
  const Series a = series({0, q(2), k(0), k(1), k(0) * k(0), k(2), k(3)});
  const Series b = series({0, r2(1), q(-1, 3) * k(0), k(1), q(5), k(0) * k(1), k(4)});
  CHECK(compose(b, a) == compose_by_powers(b, a));
}

TEST_CASE("compositional inverse") {
  CHECK(comp_inverse(Series::identity(5)) == Series::identity(5));
  CHECK(comp_inverse(series({0, 2, 0, 0})) == series({0, q(1, 2), 0, 0}));
  // Catalan numbers with alternating signs
  CHECK(comp_inverse(series({0, 1, 1, 0, 0})) == series({0, 1, -1, 2, -5}));
  CHECK_THROWS_AS(comp_inverse(series({0, k(0), 0})), SeriesError);
  CHECK_THROWS_AS(comp_inverse(series({0, 0, 1})), SeriesError);
}

TEST_CASE("square root") {
  const Series s2 = series({0, 0, 1, 0, 0});
  CHECK(sqrt_series(s2, 1) == series({0, 1, 0, 0}));
  CHECK(sqrt_series(s2, -1) == series({0, -1, 0, 0}));
  const Series half = series({0, 0, q(1, 2), 0});
  CHECK(sqrt_series(half, 1)[1] == DiffPoly(r2(1, 2)));
  CHECK(sqrt_series(series({0, 0, 1, 1, 0}), 1) == series({0, 1, q(1, 2), q(-1, 8)}));
  CHECK(sqrt_series(s2, 1).order() == 3);
  CHECK_THROWS_AS(sqrt_series(series({0, 0, -1, 0}), 1), SeriesError);
  CHECK_THROWS_AS(sqrt_series(series({0, 0, 3, 0}), 1), SeriesError);
  CHECK_THROWS_AS(sqrt_series(series({0, 0, k(0), 0}), 1), SeriesError);
}

TEST_CASE("alternating and explicit series") {
  CHECK(is_alternating(Series(6), 3, 0));
  CHECK(is_alternating(Series(6), 2, 1));
  const Series a2 = series({0, 0, q(1, 2), 0, 0});
  CHECK_FALSE(is_alternating(a2, 4, 1));
  CHECK(is_alternating(a2, 4, 0));

  // f-like: k! f_k = -k_{k-3} + lower
  const Series f = series({0, 1, 0, q(-1, 6) * k(0), q(-1, 24) * k(1), q(1, 120) * (-k(2) + k(0, 2))});
  const auto rep = explicitness(f, 3);
  CHECK(rep.is_explicit);
  CHECK(rep.leading[3] == q(-1, 6));
  CHECK(rep.leading[5] == q(-1, 120));
  CHECK(rep.residual[5] == q(1, 120) * k(0, 2));

  const auto flat = explicitness(series({0, 1, 2, 3, 4}), 3);
  CHECK_FALSE(flat.is_explicit);
  CHECK(flat.leading[3].is_zero());
}

TEST_CASE("randomized constant-coefficient laws") {
  testing_helpers::TestRng rng;
  for (int c = 0; c < 40; ++c) {
    const int order = rng.uniform(2, 7);
    const Series a = random_constant(rng, order), b = random_constant(rng, order), d = random_constant(rng, order);
    CHECK(compose(b, a) == compose_by_powers(b, a));
    CHECK(compose(compose(d, b), a) == compose(d, compose(b, a)));
    const Series inv = comp_inverse(a);
    CHECK(compose(a, inv) == Series::identity(order));
    CHECK(compose(inv, a) == Series::identity(order));
  }
}
