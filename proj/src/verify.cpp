#include "affgrav/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "affgrav/errors.hpp"

namespace affgrav {

namespace {

/// Portable draws from mt19937_64 (the standard distributions are not
/// reproducible across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }
  bool coin() { return (gen_() & 1u) != 0; }

  Rational rational() { return Rational(uniform(-6, 6), uniform(1, 5)); }
  QR2Scalar nonzero_rational() {
    int num = 0;
    while (num == 0) num = uniform(-6, 6);
    return QR2Scalar(Rational(num, uniform(1, 5)));
  }
  QR2Scalar scalar() { return coin() ? QR2Scalar(rational()) : QR2Scalar(rational(), rational()); }
  QR2Scalar nonzero_scalar() {
    QR2Scalar x;
    while (x.is_zero()) x = scalar();
    return x;
  }

 private:
  std::mt19937_64 gen_;
};

/// Random element of P^{k, parity}: sums of products of k_0..k_k with the
/// odd-order exponent sum adjusted to the requested parity.
DiffPoly random_in_class(Rng& rng, int k, Parity parity) {
  if (k < 0) return parity == Parity::even ? DiffPoly(QR2Scalar(rng.rational())) : DiffPoly();
  DiffPoly out;
  const int terms = rng.uniform(0, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> exps(static_cast<std::size_t>(k) + 1, 0);
    const int factors = rng.uniform(0, 3);
    for (int f = 0; f < factors; ++f) ++exps[static_cast<std::size_t>(rng.uniform(0, k))];
    Monomial m = Monomial::from_exponents(exps);
    if (parity_of(m.odd_degree()) != parity) {
      if (k < 1) continue;
      const int odd = 2 * rng.uniform(0, (k - 1) / 2) + 1;
      m = m * Monomial::kappa(odd);
    }
    out += DiffPoly(m, rng.scalar());
  }
  return out;
}

/// Random n-explicit series of the given order whose a_k for k < n are
/// constants compatible with the parity pattern, a_1 = lead1 (if nonzero).
Series random_explicit(Rng& rng, int order, int n, const QR2Scalar& a1, const QR2Scalar& a2) {
  Series a(order);
  for (int k = 1; k <= order; ++k) {
    const Parity par = parity_of(k + n);
    if (k == 1) {
      a[k] = a1;
    } else if (k == 2 && !a2.is_zero()) {
      a[k] = a2;
    } else if (k >= n) {
      a[k] = DiffPoly(Monomial::kappa(k - n), rng.nonzero_scalar()) + random_in_class(rng, k - n - 1, par);
    } else {
      a[k] = random_in_class(rng, k - n, par);
    }
  }
  return a;
}

/// Constant-coefficient series with a_0 = 0, a_1 != 0.
Series random_constant(Rng& rng, int order) {
  Series a(order);
  a[1] = rng.nonzero_scalar();
  for (int k = 2; k <= order; ++k)
    if (rng.uniform(0, 3) != 0) a[k] = rng.scalar();
  return a;
}

std::string str(const QR2Scalar& x) { return x.to_string(); }

// ---------------------------------------------------------------- suites

CheckLog suite_grading(const Pipeline& p, Rng& rng, int cases) {
  CheckLog log;
  for (int c = 0; c < cases; ++c) {
    const int k = rng.uniform(-1, 4), l = rng.uniform(-1, 4);
    const auto sk = parity_of(rng.uniform(0, 1)), sl = parity_of(rng.uniform(0, 1));
    const DiffPoly x = random_in_class(rng, k, sk), y = random_in_class(rng, l, sl);
    const GradedClass bound = class_product_bound({k, sk}, {l, sl});
    log.expect(in_class(x * y, bound), "grading.product", [&] {
      return "(" + x.to_string() + ") * (" + y.to_string() + ") not in " + bound.to_string();
    });
    const GradedClass dcls{k + 1, sk + Parity::odd};
    log.expect(in_class(x.differentiate(), dcls), "grading.derivative",
               [&] { return "d/ds(" + x.to_string() + ") not in " + dcls.to_string(); });
    log.expect((x * y).differentiate() == x.differentiate() * y + x * y.differentiate(), "grading.leibniz",
               [&] { return "Leibniz rule fails for " + x.to_string() + ", " + y.to_string(); });
    const DiffPoly killed = x.kill_odd_derivatives();
    log.expect(killed.kill_odd_derivatives() == killed, "grading.kill_idempotent",
               [&] { return "kill_odd_derivatives not idempotent on " + x.to_string(); });
  }
  for (int k = 1; k <= p.order; ++k) {
    const DiffPoly fk = scale(QR2Scalar(factorial(k)), p.f[k]);
    const DiffPoly gk = scale(QR2Scalar(factorial(k)), p.g[k]);
    log.expect(in_class(fk, GradedClass::of(k - 3, k + 1)), "grading.f",
               [&] { return "k! f_" + std::to_string(k) + " = " + fk.to_string(); });
    log.expect(in_class(gk, GradedClass::of(k - 4, k)), "grading.g",
               [&] { return "k! g_" + std::to_string(k) + " = " + gk.to_string(); });
  }
  return log;
}

CheckLog suite_bell() {
  CheckLog log;
  constexpr int kMax = 9;
  std::vector<DiffPoly> a(kMax + 1);
  for (int i = 1; i <= kMax; ++i) a[static_cast<std::size_t>(i)] = DiffPoly::kappa(i - 1);
  for (int k = 1; k <= kMax; ++k)
    for (int l = 1; l <= k; ++l) {
      const DiffPoly direct = bell(k, l, a);
      const DiffPoly via = bell_via_conv(k, l, a);
      log.expect(direct == via, "bell.convolution_identity", [&] {
        return "B_{" + std::to_string(k) + "," + std::to_string(l) + "}: " + direct.to_string() + " vs " +
               via.to_string();
      });
    }
  return log;
}

CheckLog suite_wronskian(const Pipeline& p) {
  CheckLog log;
  const Series w = wronskian_series(p);
  for (int k = 0; k <= w.order(); ++k) {
    const DiffPoly want = k == 0 ? DiffPoly(1) : DiffPoly();
    log.expect(w[k] == want, "wronskian.series",
               [&] { return "[t^" + std::to_string(k) + "] (f'g'' - f''g') = " + w[k].to_string(); });
  }
  const Series gv = compose(p.g, p.v);
  for (int k = 0; k <= gv.order(); ++k) {
    const DiffPoly want = k == 2 ? DiffPoly(1) : DiffPoly();
    log.expect(gv[k] == want, "wronskian.g_of_v",
               [&] { return "[t^" + std::to_string(k) + "] g(v(t)) = " + gv[k].to_string(); });
  }
  for (int k = 1; k <= p.gravity_x.order(); k += 2)
    log.expect(p.gravity_x[k].is_zero(), "wronskian.gravity_even",
               [&] { return "gravity_x_" + std::to_string(k) + " = " + p.gravity_x[k].to_string(); });
  return log;
}

/// Leading-law checks shared by pipeline and random inputs.
void check_sqrt_law(CheckLog& log, const Series& a, const Series& b, int n, const QR2Scalar& sign_root_a2,
                    const std::string& tag) {
  const auto ea = explicitness(a, n), eb = explicitness(b, n - 1);
  log.expect(eb.is_explicit, "lemma1.explicit", [&] { return tag + ": sqrt is not " + std::to_string(n - 1) + "-explicit"; });
  const QR2Scalar denom = (QR2Scalar(2) * sign_root_a2).inverse();
  for (int k = n - 1; k <= std::min(b.order(), a.order() - 1); ++k) {
    const QR2Scalar want = ea.leading[static_cast<std::size_t>(k) + 1] * denom;
    log.expect(eb.leading[static_cast<std::size_t>(k)] == want, "lemma1.leading", [&] {
      return tag + ": l^b_" + std::to_string(k) + " = " + str(eb.leading[static_cast<std::size_t>(k)]) +
             ", expected " + str(want);
    });
  }
}

void check_compose_law(CheckLog& log, const Series& b, const Series& a, const Series& chi, int n,
                       const std::string& tag) {
  const auto ea = explicitness(a, n), eb = explicitness(b, n), ec = explicitness(chi, n);
  const QR2Scalar b1 = b[1].constant_term(), a1 = a[1].constant_term();
  // the predicted leading coefficients can cancel for random inputs
  bool predicted_nonzero = true;
  for (int k = n; k <= chi.order(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    predicted_nonzero &= !(b1 * ea.leading[i] + pow(a1, k) * eb.leading[i]).is_zero();
  }
  const bool residuals_ok = std::all_of(ec.residual_ok.begin(), ec.residual_ok.end(), [](bool x) { return x; });
  log.expect(ec.alternating && residuals_ok && ec.is_explicit == predicted_nonzero, "lemma2.explicit",
             [&] { return tag + ": composition is not " + std::to_string(n) + "-explicit"; });
  for (int k = n; k <= chi.order(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const QR2Scalar want = b1 * ea.leading[i] + pow(a1, k) * eb.leading[i];
    log.expect(ec.leading[i] == want, "lemma2.leading", [&] {
      return tag + ": l^chi_" + std::to_string(k) + " = " + str(ec.leading[i]) + ", expected " + str(want);
    });
  }
}

/// n <= 0 checks only the two composition identities.
void check_inverse_law(CheckLog& log, const Series& a, const Series& b, int n, const std::string& tag) {
  const Series id = Series::identity(a.order());
  log.expect(compose(a, b) == id, "lemma3.right_inverse", [&] { return tag + ": a(b(t)) != t"; });
  log.expect(compose(b, a) == id, "lemma3.left_inverse", [&] { return tag + ": b(a(s)) != s"; });
  if (n <= 0) return;
  const auto ea = explicitness(a, n), eb = explicitness(b, n);
  log.expect(eb.is_explicit, "lemma3.explicit", [&] { return tag + ": inverse is not " + std::to_string(n) + "-explicit"; });
  const QR2Scalar a1 = a[1].constant_term();
  for (int k = n; k <= a.order(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const QR2Scalar want = -pow(a1, -k - 1) * ea.leading[i];
    log.expect(eb.leading[i] == want, "lemma3.leading", [&] {
      return tag + ": l^b_" + std::to_string(k) + " = " + str(eb.leading[i]) + ", expected " + str(want);
    });
  }
}

/// b*b with b padded by a zero coefficient, compared to a through order(a).
bool squares_to(const Series& b, const Series& a) {
  std::vector<DiffPoly> c(b.coeffs().begin(), b.coeffs().end());
  c.resize(static_cast<std::size_t>(a.order()) + 1);
  const Series padded(std::move(c));
  return padded * padded == a;
}

CheckLog suite_series_lemmas(const Pipeline& p, Rng& rng, int cases) {
  CheckLog log;
  // the pipeline's own series
  log.expect(is_alternating(p.g, 4, 0), "lemma1.alternating", [] { return std::string("g is not (4,0)-alternating"); });
  log.expect(is_alternating(p.u, 3, 1), "lemma1.alternating", [] { return std::string("u is not (3,1)-alternating"); });
  log.expect(squares_to(p.u, p.g.truncated(p.order)), "lemma1.square", [] { return std::string("u^2 != g"); });
  // g one order longer than p.g, so every l^u_k has its l^g_{k+1}
  Series g_ext(p.frame.order);
  for (int k = 1; k <= p.frame.order; ++k)
    g_ext[k] = scale(QR2Scalar(1 / factorial(k)), p.frame.psi[static_cast<std::size_t>(k)]);
  check_sqrt_law(log, g_ext, p.u, 4, p.u[1].constant_term(), "pipeline u");
  check_inverse_law(log, p.u, p.v, 3, "pipeline v");
  log.expect(is_alternating(p.v, 3, 1) && is_alternating(p.f, 3, 3), "lemma2.alternating",
             [] { return std::string("inputs of h = f(v) are not alternating as required"); });
  log.expect(is_alternating(p.h, 3, 3), "lemma2.alternating", [] { return std::string("h is not (3,3)-alternating"); });
  check_compose_law(log, p.f.truncated(p.order), p.v, p.h, 3, "pipeline h");

  const int order = std::min(p.order, 8);
  for (int c = 0; c < cases; ++c) {
    const std::string tag = "random case " + std::to_string(c);
    // constant coefficients: inverses, associativity, square roots
    const Series a = random_constant(rng, order), b = random_constant(rng, order), d = random_constant(rng, order);
    check_inverse_law(log, a, comp_inverse(a), 0, tag);
    log.expect(compose(compose(d, b), a) == compose(d, compose(b, a)), "lemma2.associative",
               [&] { return tag + ": composition is not associative"; });

    Series even(order);
    const int r = rng.uniform(1, 5), rd = rng.uniform(1, 4);
    even[2] = QR2Scalar(Rational(r * r, rd * rd)) * (rng.coin() ? QR2Scalar(1) : QR2Scalar(2));
    for (int k = 4; k <= order; k += 2) even[k] = rng.scalar();
    const int sign = rng.coin() ? 1 : -1;
    const Series root = sqrt_series(even, sign);
    log.expect(squares_to(root, even), "lemma1.square", [&] { return tag + ": sqrt(a)^2 != a"; });
    log.expect(is_alternating(root, 3, 1), "lemma1.alternating",
               [&] { return tag + ": sqrt of an even series is not odd"; });

    // explicit symbolic series and the leading laws
    const int n = rng.coin() ? 3 : 5;
    const Series xa = random_explicit(rng, order, n, rng.nonzero_rational(), QR2Scalar());
    const Series xb = random_explicit(rng, order, n, rng.nonzero_rational(), QR2Scalar());
    const Series chi = compose(xb, xa);
    log.expect(is_alternating(chi, n, n), "lemma2.alternating",
               [&] { return tag + ": composition lost the alternating pattern"; });
    check_compose_law(log, xb, xa, chi, n, tag);
    check_inverse_law(log, xa, comp_inverse(xa), n, tag);

    const int m = 4;
    const QR2Scalar q(Rational(rng.uniform(1, 4), rng.uniform(1, 3)));
    const Series ga = random_explicit(rng, order, m, QR2Scalar(), q * q);
    const Series gb = sqrt_series(ga, sign);
    log.expect(squares_to(gb, ga), "lemma1.square", [&] { return tag + ": symbolic sqrt(a)^2 != a"; });
    check_sqrt_law(log, ga, gb, m, QR2Scalar(sign) * q, tag);
  }
  return log;
}

CheckLog suite_theorems(const Pipeline& p) {
  CheckLog log;
  const Theorem1Report t1 = theorem1_criterion(p);
  log.expect(t1.matches, "theorem1.h4", [&] { return "h_4 = " + t1.h4.to_string() + ", expected (-1/10)*k1"; });
  const Theorem2Report t2 = theorem2_symbolic(p);
  log.merge(t2.log);
  std::vector<int> want;
  for (int k = 4; k <= p.order; k += 2) want.push_back(k - 3);
  log.expect(t2.forced_orders == want, "theorem2.forced_orders",
             [] { return std::string("solving h_4 = h_6 = ... = 0 does not force k1, k3, ... in turn"); });
  return log;
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.log.ok(); });
}

const CheckFailure* VerifyReport::first_failure() const {
  for (const auto& s : suites)
    if (!s.log.ok()) return &s.log.failures().front();
  return nullptr;
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.order < kMinPipelineOrder || options.order > kMaxPipelineOrder)
    throw std::invalid_argument("order must lie in [" + std::to_string(kMinPipelineOrder) + ", " +
                                std::to_string(kMaxPipelineOrder) + "]");
  VerifyReport rep;
  rep.order = options.order;
  rep.seed = options.seed;
  Rng rng(options.seed);
  const Pipeline p = build_pipeline(options.order, options.frame);
  // the triangular argument needs h_8 at least
  const Pipeline pt = options.order >= 8 ? p : build_pipeline(8, options.frame);

  rep.suites.push_back({"grading", suite_grading(p, rng, options.random_cases)});
  rep.suites.push_back({"bell", suite_bell()});
  rep.suites.push_back({"wronskian", suite_wronskian(p)});
  rep.suites.push_back({"lemma4", lemma4_check(p).log});
  rep.suites.push_back({"series-lemmas", suite_series_lemmas(p, rng, options.random_cases)});
  rep.suites.push_back({"h-leading", h_leading_law(p).log});
  rep.suites.push_back({"theorems", suite_theorems(pt)});
  return rep;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("AFFGRAV_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return kDefaultSeed;
  return v;
}

}  // namespace affgrav
