#include "affgrav/expansion.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace affgrav;
using testing_helpers::k;
using testing_helpers::q;
using testing_helpers::r2;

namespace {
const QR2Scalar kSqrt2 = QR2Scalar::sqrt2();
}

TEST_CASE("frame recursion reproduces the printed derivatives") {
  const auto fr = build_frame(8);
  CHECK(fr.phi[1] == DiffPoly(1));
  CHECK(fr.psi[1].is_zero());
  CHECK(fr.phi[2].is_zero());
  CHECK(fr.psi[2] == DiffPoly(1));
  CHECK(fr.phi[3] == -k(0));
  CHECK(fr.psi[3].is_zero());
  CHECK(fr.phi[4] == -k(1));
  CHECK(fr.psi[4] == -k(0));
  CHECK(fr.phi[5] == -k(2) + k(0, 2));
  CHECK(fr.psi[5] == q(-2) * k(1));
  CHECK(fr.phi[6] == -k(3) + q(4) * k(0) * k(1));
  CHECK(fr.psi[6] == q(-3) * k(2) + k(0, 2));
  CHECK(fr.phi[7] == -k(4) + q(4) * k(1, 2) + q(7) * k(0) * k(2) - k(0, 3));
  CHECK(fr.psi[7] == q(-4) * k(3) + q(6) * k(0) * k(1));
  CHECK(fr.phi[8] == -k(5) + q(15) * k(1) * k(2) + q(11) * k(0) * k(3) - q(9) * k(0, 2) * k(1));
  CHECK(fr.psi[8] == q(-5) * k(4) + q(10) * k(1, 2) + q(13) * k(0) * k(2) - k(0, 3));
  for (int i = 1; i < 8; ++i) {
    const auto u = static_cast<std::size_t>(i);
    CHECK(fr.phi[u + 1] == fr.phi[u].differentiate() - k(0) * fr.psi[u]);
    CHECK(fr.psi[u + 1] == fr.psi[u].differentiate() + fr.phi[u]);
  }
}

TEST_CASE("pipeline coefficients at order 8") {
  const Pipeline p = build_pipeline(8);
  CHECK(p.f[1] == DiffPoly(1));
  CHECK(p.f[3] == q(-1, 6) * k(0));
  CHECK(p.f[4] == q(-1, 24) * k(1));
  CHECK(p.f[5] == q(1, 120) * (-k(2) + k(0, 2)));
  CHECK(p.f[6] == q(1, 720) * (-k(3) + q(4) * k(0) * k(1)));
  CHECK(p.g[2] == DiffPoly(q(1, 2)));
  CHECK(p.g[4] == q(-1, 24) * k(0));
  CHECK(p.g[5] == q(-1, 60) * k(1));
  CHECK(p.g[6] == q(1, 720) * (q(-3) * k(2) + k(0, 2)));

  const QR2Scalar inv_r2 = kSqrt2.inverse();
  CHECK(p.v[0].is_zero());
  CHECK(p.v[1] == DiffPoly(kSqrt2));
  CHECK(p.v[2].is_zero());
  CHECK(p.v[3] == q(1, 6) * inv_r2 * k(0));
  CHECK(p.v[3] == r2(1, 12) * k(0));
  CHECK(p.v[4] == q(1, 15) * k(1));
  CHECK(p.v[5] == q(1, 240) * inv_r2 * (q(8) * k(2) + q(9) * k(0, 2)));
  CHECK(p.v[6] == q(1, 315) * (q(2) * k(3) + q(11) * k(0) * k(1)));

  CHECK(p.h[1] == DiffPoly(kSqrt2));
  CHECK(p.h[2].is_zero());
  CHECK(p.h[3] == q(-1, 2) * inv_r2 * k(0));
  CHECK(p.h[4] == q(-1, 10) * k(1));
  CHECK(p.h[5] == q(-1, 240) * inv_r2 * (q(8) * k(2) + q(15) * k(0, 2)));
  CHECK(p.h[6] == q(-1, 210) * (k(3) + q(9) * k(0) * k(1)));
}

TEST_CASE("v from the coefficients of g") {
  const Pipeline p = build_pipeline(8);
  const auto& g = p.g;
  CHECK(p.v[3] == -q(2) * kSqrt2 * g[4]);
  CHECK(p.v[4] == q(-4) * g[5]);
  CHECK(p.v[5] == q(2) * kSqrt2 * (q(7) * g[4] * g[4] - q(2) * g[6]));
  CHECK(p.v[6] == q(64) * g[4] * g[5] - q(8) * g[7]);
}

TEST_CASE("pipeline invariants") {
  for (int n : {6, 9, 12}) {
    const Pipeline p = build_pipeline(n);
    CHECK(p.u.order() == n);
    CHECK(p.h.order() == n);
    const Series w = wronskian_series(p);
    CHECK(w.order() == n - 2);
    CHECK(w == [&] {
      Series one(n - 2);
      one[0] = 1;
      return one;
    }());
    Series t2(n);
    t2[2] = 1;
    CHECK(compose(p.g, p.v) == t2);
    for (int i = 0; i <= n; ++i) {
      if (i % 2 == 1) CHECK(p.gravity_x[i].is_zero());
      else CHECK(p.gravity_x[i] == p.h[i]);
    }
    CHECK(p.gravity_x[0].is_zero());
    CHECK(p.gravity_x[2].is_zero());
    CHECK(explicitness(p.f, 3).is_explicit);
    CHECK(explicitness(p.g, 4).is_explicit);
    CHECK(explicitness(p.u, 3).is_explicit);
    CHECK(explicitness(p.v, 3).is_explicit);
    CHECK(explicitness(p.h, 3).is_explicit);
  }
  CHECK_THROWS(build_pipeline(5));
}

TEST_CASE("explicit leading laws of f and g") {
  const auto rep = lemma4_check(10);
  CHECK(rep.log.ok());
  for (int i = 3; i <= 10; ++i) {
    const auto u = static_cast<std::size_t>(i);
    CHECK(rep.f.leading[u] == QR2Scalar(Rational(-1) / factorial(i)));
    CHECK(rep.g.leading[u] == QR2Scalar(Rational(-(i - 3)) / factorial(i)));
  }
  CHECK(rep.g.leading[3].is_zero());
  // 6! g_6 + 3 k2 = k0^2
  CHECK(rep.q[6] == k(0, 2));
  CHECK(in_class(rep.q[6], GradedClass::of(0, 0)));
  // the sign of the (k-4) kappa k_{k-5} term: p_6 = 4 k0 k1
  CHECK(rep.p[6] == q(4) * k(0) * k(1));
}

TEST_CASE("leading law for h") {
  CHECK(h_leading_closed_form(3) == r2(-1, 4));
  CHECK(h_leading_closed_form(4) == q(-1, 10));
  CHECK(h_leading_closed_form(5) == r2(-1, 60));
  CHECK(h_leading_closed_form(12) == QR2Scalar(Rational(-3 * 64) / factorial(13)));
  const auto rep = h_leading_law(12);
  CHECK(rep.log.ok());
  CHECK(rep.extracted[8] == QR2Scalar(Rational(-3 * 16) / factorial(9)));
  // h_5's k2 coefficient -8/(240 sqrt2)
  CHECK(rep.extracted[5] == q(-8, 240) * kSqrt2.inverse());
}

TEST_CASE("flatness criterion") {
  const auto t1 = theorem1_criterion(build_pipeline(6));
  CHECK(t1.matches);
  CHECK(t1.h4 == q(-1, 10) * k(1));
  CHECK(substitute(t1.h4, {{1, 0.0}}) == 0.0);
  CHECK(substitute(t1.h4, {{1, 1.0}}) == doctest::Approx(-0.1));
}

TEST_CASE("straightness criterion forces odd derivatives to vanish") {
  const auto t2 = theorem2_symbolic(12);
  CHECK(t2.structural);
  CHECK(t2.triangular);
  CHECK(t2.log.ok());
  CHECK(t2.forced_orders == std::vector<int>{1, 3, 5, 7, 9});
  const Pipeline p = build_pipeline(8);
  // h_8 with k1 = k3 = 0 is a constant times k5
  DiffPoly h8 = p.h[8];
  DiffPoly reduced;
  for (const auto& [m, c] : h8.terms())
    if (m.exponent(1) == 0 && m.exponent(3) == 0) reduced += DiffPoly(m, c);
  CHECK(reduced == QR2Scalar(Rational(-48) / factorial(9)) * k(5));
  CHECK_THROWS(theorem2_symbolic(7));
}

TEST_CASE("an injected sign error breaks the leading law of f") {
  FrameOptions flip;
  flip.inject_sign_flip = true;
  const auto rep = lemma4_check(build_pipeline(8, flip));
  REQUIRE_FALSE(rep.log.ok());
  CHECK(rep.log.failures().front().invariant == "lemma4.leading.f");
}
