#include "affgrav/serialize.hpp"

namespace affgrav {

Json to_json(const Series& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.to_string());
  return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const Pipeline& p) {
  return {{"order", p.order}, {"f", to_json(p.f)}, {"g", to_json(p.g)},
          {"u", to_json(p.u)},  {"v", to_json(p.v)}, {"h", to_json(p.h)},
          {"gravity_x", to_json(p.gravity_x)}};
}

Json to_json(const GravitySample& s) {
  return {{"delta", s.delta}, {"s_minus", s.s_minus}, {"s_plus", s.s_plus}, {"midpoint_x", s.midpoint_x}};
}

Json to_json(const FlatnessResult& r) {
  return {{"a", r.a},
          {"b", r.b},
          {"c", r.c},
          {"predicted_b", r.predicted_b},
          {"is_flat", r.is_flat},
          {"matches_prediction", r.matches_prediction},
          {"residual", r.residual}};
}

Json to_json(const StraightnessResult& r) {
  return {{"max_dev", r.max_dev}, {"tolerance", r.tolerance}, {"is_straight", r.is_straight}};
}

Json to_json(const CorollaryResult& r) {
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"p", p.p}, {"kappa", p.kappa}, {"straightness", to_json(p.straightness)}});
  return {{"points", std::move(pts)},
          {"all_straight", r.all_straight},
          {"kappa_spread", r.kappa_spread},
          {"kappa_constant", r.kappa_constant},
          {"consistent", r.consistent}};
}

Json to_json(const VerifyReport& r) {
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json failures = Json::array();
    for (const auto& f : s.log.failures()) failures.push_back({{"invariant", f.invariant}, {"detail", f.detail}});
    suites.push_back(
        {{"name", s.name}, {"checks", s.log.checks()}, {"ok", s.log.ok()}, {"failures", std::move(failures)}});
  }
  Json out = {{"order", r.order}, {"seed", r.seed}, {"ok", r.ok()}, {"suites", std::move(suites)}};
  if (const auto* f = r.first_failure()) out["first_failure"] = {{"invariant", f->invariant}, {"detail", f->detail}};
  return out;
}

}  // namespace affgrav
