#pragma once

#include <vector>

#include "affgrav/check.hpp"
#include "affgrav/series.hpp"

namespace affgrav {

/// Test hook: build the frame with the wrong sign in front of kappa*psi_k.
struct FrameOptions {
  bool inject_sign_flip = false;
};

/// c^{(k)} = phi_k c' + psi_k c'' for 1 <= k <= order.
/// Index 0 is padding (c itself has no such decomposition) and holds zero.
struct FrameCoefficients {
  int order = 0;
  std::vector<DiffPoly> phi;
  std::vector<DiffPoly> psi;
};

/// phi_{k+1} = phi_k' - kappa psi_k, psi_{k+1} = psi_k' + phi_k from
/// phi_1 = 1, psi_1 = 0.
FrameCoefficients build_frame(int order, FrameOptions options = {});

/// Symbolic affine Taylor data at a base point, all series of order N:
///   f, g   coordinates of c(s), f_k = phi_k/k!, g_k = psi_k/k!
///   u      sqrt(g) with u_1 = +1/sqrt2
///   v      compositional inverse of u, so g(v(t)) = t^2
///   h      f(v(t))
///   gravity_x  (h(t) + h(-t))/2, the x-coordinate of the gravity curve at y = t^2
///
/// The frame is built one order higher than N so that u (which loses one order
/// in the square root) and hence v and h are exact through N.
struct Pipeline {
  int order = 0;
  FrameCoefficients frame;
  Series f, g, u, v, h, gravity_x;
};

inline constexpr int kMinPipelineOrder = 6;
inline constexpr int kMaxPipelineOrder = 14;

Pipeline build_pipeline(int order, FrameOptions options = {});

/// f'g'' - f''g' as a series of order N-2; identically 1 in affine arclength.
Series wronskian_series(const Pipeline& p);

struct Lemma4Report {
  ExplicitnessReport f;
  ExplicitnessReport g;
  /// p_k = k! f_k + k_{k-3},  q_k = k! g_k + (k-3) k_{k-4}
  std::vector<DiffPoly> p;
  std::vector<DiffPoly> q;
  CheckLog log;
};

/// Leading laws l^f_k = -1/k!, l^g_k = -(k-3)/k!, residual classes
/// p_k in P^{k-5,k+1}, q_k in P^{k-6,k}, and the induction step
///   p_k = p_{k-1}' + (k-4) kappa k_{k-5} - kappa q_{k-1},
///   q_k = q_{k-1}' + p_{k-1}                       (4 <= k <= N).
Lemma4Report lemma4_check(const Pipeline& p);
Lemma4Report lemma4_check(int order);

struct LeadingLawReport {
  /// Indexed by k; entries below k = 3 are unused.
  std::vector<QR2Scalar> extracted;
  std::vector<QR2Scalar> expected;
  std::vector<QR2Scalar> composition_route;
  CheckLog log;
};

/// -3 sqrt2^k / (k+1)!
QR2Scalar h_leading_closed_form(int k);

/// Leading coefficients of h checked against the closed form and against
/// f_1 (-u_1^{-k-1} l^u_k) + v_1^k l^f_k with l^u_k = l^g_{k+1} / (2 sqrt(g_2)).
LeadingLawReport h_leading_law(const Pipeline& p);
LeadingLawReport h_leading_law(int order);

struct Theorem1Report {
  DiffPoly h4;
  bool matches = false;  ///< h4 == -k1/10
};

Theorem1Report theorem1_criterion(const Pipeline& p);

struct Theorem2Report {
  /// Every monomial of every even-index h_k contains an odd-order derivative.
  bool structural = false;
  /// Each h_{2j}, j >= 2, is c * k_{2j-3} plus terms in lower derivatives
  /// that vanish once k_1, k_3, ..., k_{2j-5} do, with c a nonzero constant.
  bool triangular = false;
  /// Odd orders forced to vanish, in solving order: 1, 3, 5, ...
  std::vector<int> forced_orders;
  CheckLog log;
};

Theorem2Report theorem2_symbolic(const Pipeline& p);
Theorem2Report theorem2_symbolic(int order);

}  // namespace affgrav
