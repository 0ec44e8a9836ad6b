#include "affgrav/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "affgrav/errors.hpp"
#include "affgrav/fixtures.hpp"
#include "affgrav/serialize.hpp"
#include "affgrav/verify.hpp"

namespace affgrav {

namespace {

struct Config {
  int order = 10;
  double step = 1e-3;
  DeltaSchedule schedule;
  double tol_flat = kDefaultTolFlat;
  double tol_straight = 0.0;  // 0 selects 1e-6 * max delta
  std::string format = "text";
  std::string fixture = "parabola";
  double point = 0.0;
  int sweep = 0;
  bool self_test = false;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

const CLI::Validator kOrderRange(
    [](std::string& s) -> std::string {
      int v = 0;
      try {
        v = std::stoi(s);
      } catch (const std::exception&) {
        return "order must be an integer";
      }
      if (v < kMinPipelineOrder) return "order " + s + " is below the minimum " + std::to_string(kMinPipelineOrder);
      if (v > kMaxPipelineOrder) return "order " + s + " is above the maximum " + std::to_string(kMaxPipelineOrder);
      return {};
    },
    "[6..14]");

void print_series(std::ostream& out, const char* name, const Series& s) {
  for (int k = 0; k <= s.order(); ++k) out << name << '_' << k << " = " << s[k].to_string() << '\n';
}

int cmd_expand(const Config& cfg, std::ostream& out) {
  const Pipeline p = build_pipeline(cfg.order);
  if (cfg.format == "json") {
    out << to_json(p).dump(2) << '\n';
    return kExitOk;
  }
  out << "order " << p.order << '\n';
  print_series(out, "f", p.f);
  print_series(out, "g", p.g);
  print_series(out, "u", p.u);
  print_series(out, "v", p.v);
  print_series(out, "h", p.h);
  print_series(out, "gravity_x", p.gravity_x);
  return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.order = cfg.order;
  opts.seed = seed_from_env();
  opts.frame.inject_sign_flip = cfg.self_test;
  const VerifyReport rep = run_verification(opts);
  const QR2Scalar lead = h_leading_closed_form(cfg.order);

  if (cfg.format == "json") {
    Json j = to_json(rep);
    j["self_test"] = cfg.self_test;
    j["h_leading"] = {{"k", cfg.order}, {"value", lead.to_string()}};
    out << j.dump(2) << '\n';
    return rep.ok() ? kExitOk : kExitFailure;
  }
  out << "order " << rep.order << ", seed " << rep.seed << (cfg.self_test ? ", sign flip injected" : "") << '\n';
  for (const auto& s : rep.suites) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-14s %6d checks  %s", s.name.c_str(), s.log.checks(),
                  s.log.ok() ? "ok" : "FAILED");
    out << line << '\n';
  }
  if (rep.ok()) {
    out << "l^h_" << cfg.order << " = " << lead.to_string() << " checked\n";
    out << "PASS: " << rep.suites.size() << " suites\n";
    return kExitOk;
  }
  const auto failed = std::count_if(rep.suites.begin(), rep.suites.end(), [](const SuiteResult& s) { return !s.log.ok(); });
  const CheckFailure* f = rep.first_failure();
  out << "FAIL: " << failed << " of " << rep.suites.size() << " suites\n";
  out << "first failure: " << f->invariant << ": " << f->detail << '\n';
  return kExitFailure;
}

int cmd_gravity(const Config& cfg, std::ostream& out) {
  const Fixture fx = parse_fixture(cfg.fixture);
  const NumCurve base = realize(fx.spec, cfg.step);
  const NumCurve curve = cfg.point == 0.0 ? base : base.renormalized(cfg.point);
  const double p = base.s(base.nearest_index(cfg.point));
  const auto deltas = cfg.schedule.deltas();
  const auto samples = gravity_samples(curve, deltas);
  const double kp = fx.kappa_prime(p);
  const FlatnessResult flat = fit_flatness(samples, kp, cfg.tol_flat);
  const StraightnessResult straight = straightness_test(samples, cfg.tol_straight);

  std::optional<CorollaryResult> sweep;
  if (cfg.sweep > 0) {
    SweepOptions so;
    so.schedule = cfg.schedule;
    so.tol_straight = cfg.tol_straight;
    const auto pts = sweep_points(fx, cfg.sweep);
    sweep = corollary_sweep(base, pts, so);
  }
  const bool ok = flat.matches_prediction && (!sweep || sweep->consistent);

  if (cfg.format == "csv") {
    out << "delta,s_minus,s_plus,midpoint_x\n";
    char line[128];
    for (const auto& s : samples) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g", s.delta, s.s_minus, s.s_plus, s.midpoint_x);
      out << line << '\n';
    }
  } else if (cfg.format == "json") {
    Json j;
    j["fixture"] = fx.name;
    j["point"] = p;
    j["step"] = cfg.step;
    j["kappa"] = fx.kappa(p);
    j["kappa_prime"] = kp;
    Json arr = Json::array();
    for (const auto& s : samples) arr.push_back(to_json(s));
    j["samples"] = std::move(arr);
    j["flatness"] = to_json(flat);
    j["straightness"] = to_json(straight);
    if (sweep) j["corollary"] = to_json(*sweep);
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  } else {
    out << "fixture " << fx.name << " at p = " << num(p) << " (kappa = " << num(fx.kappa(p))
        << ", kappa' = " << num(kp) << ")\n";
    for (const auto& s : samples)
      out << "  delta " << num(s.delta) << "  s- " << num(s.s_minus) << "  s+ " << num(s.s_plus) << "  x "
          << num(s.midpoint_x) << '\n';
    out << "flatness: b = " << num(flat.b) << " (predicted " << num(flat.predicted_b) << "), is_flat "
        << yes_no(flat.is_flat) << ", matches_prediction " << yes_no(flat.matches_prediction) << '\n';
    out << "straightness: max_dev = " << num(straight.max_dev) << " (tol " << num(straight.tolerance)
        << "), is_straight " << yes_no(straight.is_straight) << '\n';
    if (sweep) {
      for (const auto& sp : sweep->points)
        out << "  p " << num(sp.p) << "  kappa " << num(sp.kappa) << "  max_dev " << num(sp.straightness.max_dev)
            << "  straight " << yes_no(sp.straightness.is_straight) << '\n';
      out << "corollary: all_straight " << yes_no(sweep->all_straight) << ", kappa_spread "
          << num(sweep->kappa_spread) << ", consistent " << yes_no(sweep->consistent) << '\n';
    }
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Affine Taylor expansions and gravity curves", "affgrav"};
  app.require_subcommand(1, 1);

  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "Truncation order N")->check(kOrderRange)->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
  };

  auto* expand = app.add_subcommand("expand", "Print the symbolic series f, g, u, v, h, gravity_x");
  add_order(expand);
  add_format(expand, {"text", "json"});

  auto* verify = app.add_subcommand("verify", "Run the symbolic invariant suites");
  add_order(verify);
  add_format(verify, {"text", "json"});
  verify->add_flag("--self-test", cfg.self_test, "Inject a sign error into the frame recursion");

  auto* gravity = app.add_subcommand("gravity", "Sample a gravity curve numerically");
  gravity->add_option("--fixture", cfg.fixture,
                      "parabola, circle, ellipse:a,b, hyperbola or kappa-poly:c0,c1,...")
      ->capture_default_str();
  gravity->add_option("--point", cfg.point, "Base point (affine arclength)")->capture_default_str();
  gravity->add_option("--sweep", cfg.sweep, "Also run the corollary sweep at this many base points")
      ->check(CLI::NonNegativeNumber);
  gravity->add_option("--step", cfg.step, "Grid step")->check(CLI::PositiveNumber)->capture_default_str();
  gravity->add_option("--delta0", cfg.schedule.delta0, "Smallest chord height")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gravity->add_option("--delta-ratio", cfg.schedule.ratio, "Geometric ratio of chord heights")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gravity->add_option("--delta-count", cfg.schedule.count, "Number of chord heights")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gravity->add_option("--tol-flat", cfg.tol_flat, "Flatness tolerance on b")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gravity->add_option("--tol-straight", cfg.tol_straight, "Straightness tolerance (default 1e-6 * max delta)")
      ->check(CLI::PositiveNumber);
  add_format(gravity, {"text", "json", "csv"});

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (expand->parsed()) return cmd_expand(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    return cmd_gravity(cfg, out);
  } catch (const NoBracket& e) {
    err << "error: " << e.what() << "; reduce --delta0/--delta-ratio/--delta-count or choose another --point\n";
    return kExitUsage;
  } catch (const DegenerateCurve& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RankDeficientFit& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace affgrav
