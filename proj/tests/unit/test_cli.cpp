#include <cstdlib>
#include <fstream>
#include <sstream>

#include "affgrav/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using affgrav::run_cli;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("expand") {
  const Run j = cli({"expand", "--order", "8", "--format", "json"});
  REQUIRE(j.code == 0);
  const Json doc = Json::parse(j.out);
  CHECK(doc["order"] == 8);
  CHECK(doc["h"]["coeffs"][4] == "(-1/10)*k1");
  CHECK(doc["h"]["coeffs"].size() == 9);

  const Run t = cli({"expand", "--order", "6"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("v_6 = (2/315)*k3 + (11/315)*k1*k0") != std::string::npos);

  const Run low = cli({"expand", "--order", "5"});
  CHECK(low.code == 2);
  CHECK(low.err.find("below the minimum") != std::string::npos);
  CHECK(cli({"expand", "--order", "15"}).code == 2);
  CHECK(cli({"expand", "--format", "csv"}).code == 2);
}

TEST_CASE("expand output is deterministic and matches the golden file") {
  const Run a = cli({"expand", "--order", "8", "--format", "json"});
  const Run b = cli({"expand", "--order", "8", "--format", "json"});
  CHECK(a.out == b.out);
  const std::string path = std::string(AFFGRAV_GOLDEN_DIR) + "/expand_order8.json";
  if (const char* upd = std::getenv("AFFGRAV_UPDATE_GOLDEN"); upd != nullptr && std::string(upd) == "1") {
    std::ofstream(path) << a.out;
  }
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(a.out == golden.str());
}

TEST_CASE("verify") {
  const Run ok = cli({"verify"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS: 7 suites") != std::string::npos);
  CHECK(ok.out.find("seed") != std::string::npos);

  const Run flip = cli({"verify", "--self-test", "--order", "8"});
  CHECK(flip.code == 1);
  CHECK(flip.out.find("first failure: lemma4.leading.f") != std::string::npos);

  const Run o12 = cli({"verify", "--order", "12", "--format", "json"});
  CHECK(o12.code == 0);
  const Json doc = Json::parse(o12.out);
  CHECK(doc["ok"] == true);
  // -3 * 2^6 / 13!
  CHECK(doc["h_leading"]["value"] == "-1/32432400");
  CHECK(doc["suites"].size() == 7);
}

TEST_CASE("gravity") {
  const Run par = cli({"gravity", "--fixture", "parabola", "--format", "json"});
  REQUIRE(par.code == 0);
  const Json p = Json::parse(par.out);
  CHECK(p["straightness"]["is_straight"] == true);
  CHECK(p["straightness"]["max_dev"] == 0.0);

  const Run ks = cli({"gravity", "--fixture", "kappa-poly:0,1", "--point", "0", "--format", "json"});
  REQUIRE(ks.code == 0);
  const double b = Json::parse(ks.out)["flatness"]["b"];
  CHECK(b == doctest::Approx(-0.1).epsilon(0.05));

  const Run ell = cli({"gravity", "--fixture", "ellipse:2,1", "--sweep", "8", "--format", "json"});
  REQUIRE(ell.code == 0);
  const Json e = Json::parse(ell.out);
  CHECK(e["corollary"]["all_straight"] == true);
  CHECK(e["corollary"]["points"].size() == 8);

  const Run csv = cli({"gravity", "--fixture", "circle", "--format", "csv", "--delta-count", "6"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("delta,s_minus,s_plus,midpoint_x\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);

  const Run shifted = cli({"gravity", "--fixture", "kappa-poly:1,0,1", "--point", "0.5"});
  CHECK(shifted.code == 0);
  CHECK(shifted.out.find("is_straight false") != std::string::npos);

  const Run a = cli({"gravity", "--fixture", "hyperbola", "--format", "json"});
  const Run a2 = cli({"gravity", "--fixture", "hyperbola", "--format", "json"});
  CHECK(a.out == a2.out);
}

TEST_CASE("gravity configuration errors") {
  const Run far = cli({"gravity", "--fixture", "circle", "--delta0", "5"});
  CHECK(far.code == 2);
  CHECK(far.err.find("delta") != std::string::npos);
  CHECK(cli({"gravity", "--fixture", "spiral"}).code == 2);
  CHECK(cli({"gravity", "--step", "0"}).code == 2);
  CHECK(cli({"gravity", "--tol-flat", "-1"}).code == 2);
  CHECK(cli({"gravity", "--delta-count", "4"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}
