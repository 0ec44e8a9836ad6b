#include "affgrav/expansion.hpp"

#include <stdexcept>

#include "affgrav/errors.hpp"

namespace affgrav {

namespace {

const DiffPoly& kappa0() {
  static const DiffPoly k = DiffPoly::kappa(0);
  return k;
}

/// k_order, or zero for negative orders.
DiffPoly kappa_or_zero(int order) { return order < 0 ? DiffPoly{} : DiffPoly::kappa(order); }

std::string str(const QR2Scalar& x) { return x.to_string(); }

QR2Scalar leading_of(const DiffPoly& p, int order) {
  return order < 0 ? QR2Scalar{} : p.coefficient(Monomial::kappa(order));
}

void require_order(int order, int min, const char* what) {
  if (order < min)
    throw std::invalid_argument(std::string(what) + " requires order >= " + std::to_string(min) + ", got " +
                                std::to_string(order));
}

}  // namespace

FrameCoefficients build_frame(int order, FrameOptions options) {
  require_order(order, 2, "build_frame");
  FrameCoefficients fr;
  fr.order = order;
  fr.phi.resize(static_cast<std::size_t>(order) + 1);
  fr.psi.resize(static_cast<std::size_t>(order) + 1);
  fr.phi[1] = DiffPoly(1);
  const int sign = options.inject_sign_flip ? 1 : -1;
  for (int k = 1; k < order; ++k) {
    const auto i = static_cast<std::size_t>(k);
    fr.phi[i + 1] = fr.phi[i].differentiate() + QR2Scalar(sign) * (kappa0() * fr.psi[i]);
    fr.psi[i + 1] = fr.psi[i].differentiate() + fr.phi[i];
  }
  return fr;
}

Pipeline build_pipeline(int order, FrameOptions options) {
  require_order(order, kMinPipelineOrder, "build_pipeline");
  Pipeline p;
  p.order = order;
  p.frame = build_frame(order + 1, options);

  Series g_ext(order + 1);
  p.f = Series(order);
  for (int k = 1; k <= order + 1; ++k) {
    const QR2Scalar inv_fact(1 / factorial(k));
    if (k <= order) p.f[k] = inv_fact * p.frame.phi[static_cast<std::size_t>(k)];
    g_ext[k] = inv_fact * p.frame.psi[static_cast<std::size_t>(k)];
  }
  p.g = g_ext.truncated(order);
  p.u = sqrt_series(g_ext, +1);
  p.v = comp_inverse(p.u);
  p.h = compose(p.f, p.v);
  p.gravity_x = Series(order);
  for (int k = 0; k <= order; k += 2) p.gravity_x[k] = p.h[k];
  return p;
}

Series wronskian_series(const Pipeline& p) {
  const Series f1 = p.f.derivative();
  const Series g1 = p.g.derivative();
  return f1 * g1.derivative() - f1.derivative() * g1;
}

Lemma4Report lemma4_check(const Pipeline& pl) {
  const int n = pl.order;
  Lemma4Report rep;
  rep.f = explicitness(pl.f, 3);
  rep.g = explicitness(pl.g, 4);
  rep.p.resize(static_cast<std::size_t>(n) + 1);
  rep.q.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const QR2Scalar kf(factorial(k));
    rep.p[static_cast<std::size_t>(k)] = kf * pl.f[k] + kappa_or_zero(k - 3);
    rep.q[static_cast<std::size_t>(k)] = kf * pl.g[k] + QR2Scalar(k - 3) * kappa_or_zero(k - 4);
  }

  auto& log = rep.log;
  for (int k = 3; k <= n; ++k) {
    const QR2Scalar want = QR2Scalar(Rational(-1) / factorial(k));
    const QR2Scalar got = rep.f.leading[static_cast<std::size_t>(k)];
    log.expect(got == want, "lemma4.leading.f",
               [&] { return "k=" + std::to_string(k) + ": l^f_k = " + str(got) + ", expected " + str(want); });
  }
  for (int k = 3; k <= n; ++k) {
    const QR2Scalar want = QR2Scalar(Rational(-(k - 3)) / factorial(k));
    const QR2Scalar got = rep.g.leading[static_cast<std::size_t>(k)];
    log.expect(got == want, "lemma4.leading.g",
               [&] { return "k=" + std::to_string(k) + ": l^g_k = " + str(got) + ", expected " + str(want); });
  }
  log.expect(rep.f.is_explicit, "lemma4.explicit.f", [] { return std::string("f is not 3-explicit"); });
  log.expect(rep.g.is_explicit, "lemma4.explicit.g", [] { return std::string("g is not 4-explicit"); });
  for (int k = 0; k <= n; ++k) {
    const auto& pk = rep.p[static_cast<std::size_t>(k)];
    const auto& qk = rep.q[static_cast<std::size_t>(k)];
    const auto pc = GradedClass::of(k - 5, k + 1);
    const auto qc = GradedClass::of(k - 6, k);
    log.expect(in_class(pk, pc), "lemma4.residual.p", [&] {
      return "k=" + std::to_string(k) + ": p_k = " + pk.to_string() + " not in " + pc.to_string();
    });
    log.expect(in_class(qk, qc), "lemma4.residual.q", [&] {
      return "k=" + std::to_string(k) + ": q_k = " + qk.to_string() + " not in " + qc.to_string();
    });
  }
  for (int k = 4; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const DiffPoly p_step = rep.p[i - 1].differentiate() + QR2Scalar(k - 4) * (kappa0() * kappa_or_zero(k - 5)) -
                            kappa0() * rep.q[i - 1];
    const DiffPoly q_step = rep.q[i - 1].differentiate() + rep.p[i - 1];
    log.expect(p_step == rep.p[i], "lemma4.induction.p", [&] {
      return "k=" + std::to_string(k) + ": step gives " + p_step.to_string() + ", p_k = " + rep.p[i].to_string();
    });
    log.expect(q_step == rep.q[i], "lemma4.induction.q", [&] {
      return "k=" + std::to_string(k) + ": step gives " + q_step.to_string() + ", q_k = " + rep.q[i].to_string();
    });
  }
  return rep;
}

Lemma4Report lemma4_check(int order) { return lemma4_check(build_pipeline(order)); }

QR2Scalar h_leading_closed_form(int k) {
  return QR2Scalar(-3) * pow(QR2Scalar::sqrt2(), k) * QR2Scalar(1 / factorial(k + 1));
}

LeadingLawReport h_leading_law(const Pipeline& p) {
  require_order(p.order, 4, "h_leading_law");
  const int n = p.order;
  LeadingLawReport rep;
  rep.extracted.resize(static_cast<std::size_t>(n) + 1);
  rep.expected.resize(static_cast<std::size_t>(n) + 1);
  rep.composition_route.resize(static_cast<std::size_t>(n) + 1);

  const ExplicitnessReport hx = explicitness(p.h, 3);
  const QR2Scalar f1 = p.f[1].constant_term();
  const QR2Scalar u1 = p.u[1].constant_term();
  const QR2Scalar v1 = p.v[1].constant_term();
  const QR2Scalar root_g2 = *p.g[2].constant_term().sqrt();
  for (int k = 3; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rep.extracted[i] = hx.leading[i];
    rep.expected[i] = h_leading_closed_form(k);
    // l^g_{k+1} from the frame, which is one order longer than g
    const QR2Scalar lg = leading_of(p.frame.psi[i + 1], k - 3) * QR2Scalar(1 / factorial(k + 1));
    const QR2Scalar lf = leading_of(p.f[k], k - 3);
    const QR2Scalar lu = lg / (QR2Scalar(2) * root_g2);
    rep.composition_route[i] = f1 * (-pow(u1, -k - 1) * lu) + pow(v1, k) * lf;

    rep.log.expect(rep.extracted[i] == rep.expected[i], "hlaw.extracted", [&] {
      return "k=" + std::to_string(k) + ": l^h_k = " + str(rep.extracted[i]) + ", expected " + str(rep.expected[i]);
    });
    rep.log.expect(rep.composition_route[i] == rep.expected[i], "hlaw.composition", [&] {
      return "k=" + std::to_string(k) + ": composition route gives " + str(rep.composition_route[i]) +
             ", expected " + str(rep.expected[i]);
    });
  }
  return rep;
}

LeadingLawReport h_leading_law(int order) { return h_leading_law(build_pipeline(order)); }

Theorem1Report theorem1_criterion(const Pipeline& p) {
  require_order(p.order, 4, "theorem1_criterion");
  Theorem1Report rep;
  rep.h4 = p.h[4];
  rep.matches = rep.h4 == QR2Scalar::fraction(-1, 10) * DiffPoly::kappa(1);
  return rep;
}

Theorem2Report theorem2_symbolic(const Pipeline& p) {
  require_order(p.order, 8, "theorem2_symbolic");
  Theorem2Report rep;
  auto& log = rep.log;
  bool structural = true;
  for (int k = 0; k <= p.order; k += 2) {
    const DiffPoly killed = p.h[k].kill_odd_derivatives();
    structural &= log.expect(killed.is_zero(), "theorem2.structural", [&] {
      return "k=" + std::to_string(k) + ": h_k keeps " + killed.to_string() + " after killing odd derivatives";
    });
  }
  bool triangular = true;
  for (int k = 4; k <= p.order; k += 2) {
    const int top = k - 3;
    const Monomial lead = Monomial::kappa(top);
    const QR2Scalar c = p.h[k].coefficient(lead);
    const DiffPoly rest = p.h[k] - DiffPoly(lead, c);
    const bool ok_lead = log.expect(!c.is_zero(), "theorem2.triangular.leading", [&] {
      return "k=" + std::to_string(k) + ": no constant multiple of k" + std::to_string(top) + " in h_k";
    });
    const bool ok_rest = log.expect(rest.max_order() < top && rest.kill_odd_derivatives().is_zero(),
                                    "theorem2.triangular.residual", [&] {
                                      return "k=" + std::to_string(k) + ": residual " + rest.to_string() +
                                             " does not vanish under the earlier odd orders";
                                    });
    triangular &= ok_lead && ok_rest;
    if (ok_lead && ok_rest) rep.forced_orders.push_back(top);
  }
  rep.structural = structural;
  rep.triangular = triangular;
  return rep;
}

Theorem2Report theorem2_symbolic(int order) { return theorem2_symbolic(build_pipeline(order)); }

}  // namespace affgrav
