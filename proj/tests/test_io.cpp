#include "doctest.h"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "report.hpp"
#include "run.hpp"
#include "spec_io.hpp"

using namespace slicing;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.command = Command::Sweep;
  c.theorems = {"thm2"};
  c.bodies = {Json("ball"), Json("cube")};
  c.densities = {Json("1")};
  c.dims = {3, 4};
  c.codims = {1};
  c.search.restarts = 8;
  c.search.evals = 200;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("body documents") {
  const double x[] = {0.5, 0.1, -0.2};
  CHECK(parse_body(Json::parse(R"({"kind":"lp-ball","p":1.0,"dim":3})")).norm(x) == doctest::Approx(0.8));
  CHECK(parse_body(Json::parse(R"({"kind":"ellipsoid","matrix":[[4,0,0],[0,1,0],[0,0,1]]})")).norm(x) ==
        doctest::Approx(std::sqrt(1.0 + 0.01 + 0.04)));
  CHECK(parse_body(Json::parse(R"({"kind":"ellipsoid","axes":[0.5,1,1]})")).norm(x) ==
        doctest::Approx(std::sqrt(1.0 + 0.01 + 0.04)));
  CHECK(parse_body(Json("cube"), 3).norm(x) == doctest::Approx(0.5));
  CHECK(parse_body(Json("ball"), 5).dim() == 5);
  CHECK(parse_body(Json("complex-l1-ball"), 4).dim() == 4);
  CHECK(parse_body(Json("lp-ball:3"), 2).exponent() == 3.0);
  CHECK(parse_body(Json::parse(R"({"kind":"scaled","body":"cube","scale":2})"), 3).norm(x) ==
        doctest::Approx(0.25));
  CHECK(parse_body(Json::parse(R"({"kind":"rtheta-symmetrized","body":{"kind":"cube","dim":4}})")).kind() ==
        BodyKind::RThetaSymmetrized);
  CHECK(fixed_dim(Json::parse(R"({"kind":"cube","dim":4})")) == 4);
  CHECK_FALSE(fixed_dim(Json("cube")).has_value());
  CHECK(fixed_dim(Json::parse(R"({"kind":"complex-lp-ball","p":2,"complex_dim":3})")) == 6);

  CHECK_THROWS_AS(parse_body(Json("dodecahedron"), 3), InputError);
  CHECK_THROWS_AS(parse_body(Json("cube")), InputError);
  CHECK_THROWS_AS(parse_body(Json::parse(R"({"kind":"lp-ball","dim":3})")), InputError);
  CHECK_THROWS_AS(parse_body(Json("complex-l1-ball"), 3), InputError);
  CHECK_THROWS_AS(parse_body(Json::parse(R"({"kind":"cube","dim":4})"), 3), InputError);
}

TEST_CASE("density documents") {
  const double x[] = {1.0, 0.0};
  const double y[] = {1.5, 0.0};
  CHECK(parse_density(Json("1")).eval(x) == 1.0);
  CHECK(parse_density(Json("1+|x|^2")).eval(x) == doctest::Approx(2.0));
  CHECK(parse_density(Json("1+0.5gauss")).eval(x) == doctest::Approx(1.0 + 0.5 * std::exp(-1.0)));
  CHECK(parse_density(Json::parse(R"({"kind":"radial-gaussian","sigma":1.0})")).eval(x) ==
        doctest::Approx(std::exp(-0.5)));
  CHECK(parse_density(Json::parse(R"({"kind":"radial-polynomial","coefficients":[0,0,3]})")).eval(x) ==
        doctest::Approx(3.0));
  const Density sum = parse_density(
      Json::parse(R"({"kind":"shifted-indicator-sum","components":[{"body":"ball","weight":1},
                  {"body":{"kind":"scaled","body":"ball","scale":2},"weight":1,"density":"gaussian"}]})"),
      2);
  CHECK(sum.eval(y) == doctest::Approx(std::exp(-1.125)));
  CHECK_THROWS_AS(parse_density(Json("exotic")), InputError);
  CHECK(spec_from_string("{\"kind\":\"cube\",\"dim\":2}")["kind"] == "cube");
  CHECK(spec_from_string("ball")["kind"] == "ball");
}

TEST_CASE("CSV layout") {
  CHECK(kCsvHeader == "theorem,n,k,lhs,rhs,ratio,epsilon,est_error,pass");
  const CsvRow row{"thm1", 4, 2, 1.0 / 3.0, 0.7, (1.0 / 3.0) / 0.7, 1e-300, 2.5e-7, true};
  const std::string text = to_csv(row);
  const CsvRow back = parse_csv_row(text);
  CHECK(back.tag == row.tag);
  CHECK(back.n == 4);
  CHECK(back.k == 2);
  CHECK(back.lhs == row.lhs);
  CHECK(back.rhs == row.rhs);
  CHECK(back.ratio == row.ratio);
  CHECK(back.epsilon == row.epsilon);
  CHECK(back.est_error == row.est_error);
  CHECK(back.pass);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(parse_csv_row("thm1,4"), InputError);
}

TEST_CASE("reports round-trip and CSV ratios are consistent") {
  const RunResult res = run_sweep(small_config());
  REQUIRE(res.reports.size() == 4);
  CHECK(res.all_pass);
  for (const auto& r : res.reports) {
    const VerificationReport back = report_from_json(report_to_json(r));
    CHECK(report_to_json(back) == report_to_json(r));
    CHECK(back.lhs == r.lhs);
    CHECK(back.witness_frame == r.witness_frame);
    CHECK(back.proof_steps.size() == r.proof_steps.size());
    const CsvRow row = parse_csv_row(to_csv(csv_row(r)));
    CHECK(std::abs(row.ratio - row.lhs / row.rhs) <= 1e-15 * row.ratio);
  }
  const auto out = lines(res.output);
  REQUIRE(out.size() >= 6);
  CHECK(out[0] == kCsvHeader);
  CHECK(out.back() == "# all_pass true");
}

TEST_CASE("JSON report document carries the documented fields") {
  const RunResult res = run_sweep(small_config());
  const Json r = report_to_json(res.reports.front());
  for (const char* key : {"theorem", "n", "k", "lhs", "rhs", "ratio", "epsilon", "witness_frame", "est_error", "pass"}) {
    CHECK(r.contains(key));
  }
  const RunResult again = run_sweep(small_config());
  CHECK(again.output == res.output);
}

TEST_CASE("run configurations") {
  RunConfig c = small_config();
  c.quadrature.scheme = SphereScheme::RandomizedQmc;
  c.format = OutputFormat::Json;
  c.seed = 1234;
  c.out = "x.json";
  c.proof_replay = false;
  const Json doc = config_to_json(c);
  CHECK(config_to_json(config_from_json(doc)) == doc);

  Json bad = doc;
  bad["colour"] = "blue";
  CHECK_THROWS_WITH_AS(config_from_json(bad), "config.colour: unknown field", InputError);
  RunConfig empty = small_config();
  empty.bodies.clear();
  CHECK_THROWS_WITH_AS(empty.validate(), "config.bodies: empty body list", InputError);
  CHECK_THROWS_AS(run(empty), InputError);
  RunConfig bad_theorem = small_config();
  bad_theorem.theorems = {"thm7"};
  CHECK_THROWS_AS(bad_theorem.validate(), InputError);
}

TEST_CASE("constants sweep") {
  RunConfig c;
  c.command = Command::Sweep;
  c.theorems = {"constants"};
  c.dims.clear();
  for (int n = 2; n <= 60; ++n) c.dims.push_back(n);
  const RunResult res = run_sweep(c);
  CHECK(res.all_pass);
  int rows = 0;
  for (const auto& l : lines(res.output)) {
    if (l.rfind("constants,", 0) == 0) {
      ++rows;
      CHECK(parse_csv_row(l).ratio < 1.0);
    }
  }
  CHECK(rows == 59 * 60 / 2);
}

TEST_CASE("sweeps skip instances whose preconditions fail") {
  RunConfig c = small_config();
  c.theorems = {"thm1"};
  c.dims = {3};
  const RunResult res = run_sweep(c);
  CHECK(res.reports.size() == 1);
  CHECK(res.output.find("# skipped thm1 cube") != std::string::npos);
  RunConfig v = c;
  v.command = Command::Verify;
  CHECK_THROWS_AS(run(v), InputError);
}
