#include <doctest.h>

#include "schrosym/reports.hpp"

using namespace schrosym;

namespace {
const std::vector<TableEntry>& catalog() {
  static const std::vector<TableEntry> c = load_catalog(default_catalog_path());
  return c;
}

bool has_candidate(const nlohmann::json& result, const std::string& label) {
  for (const auto& c : result["candidates"])
    if (c == label) return true;
  return false;
}
}  // namespace

TEST_CASE("verify-table selects single items and whole tables") {
  CommandReport one = cmd_verify_table(catalog(), {"1.8"}, {});
  REQUIRE(one.document["results"].size() == 1);
  CHECK(one.document["results"][0]["status"] == "verified");
  CHECK(one.document["schema"] == kReportSchema);
  CHECK(one.exit_status == 0);

  CommandReport table = cmd_verify_table(catalog(), {"T3"}, {});
  CHECK(table.document["results"].size() == 11);
  CHECK(table.exit_status == 1);
  CHECK(table.document["exit_status"] == 1);

  CHECK_THROWS_AS(cmd_verify_table(catalog(), {"9.1"}, {}), CommandError);
  CHECK_THROWS_AS(cmd_verify_table(catalog(), {"x"}, {}), CommandError);
}

TEST_CASE("verify-table oracle agrees with the symbolic verdicts") {
  VerifyOptions opt;
  opt.oracle = true;
  CommandReport r = cmd_verify_table(catalog(), {"2.9", "3.10"}, opt);
  CHECK(r.exit_status == 0);
  for (const auto& entry : r.document["results"])
    for (const auto& c : entry["oracle"]["checks"]) {
      CHECK(c["agrees"] == true);
      CHECK(c["residual"]["fd"].get<double>() < 1e-7);
    }
}

TEST_CASE("check reports alpha and the failing determining equations") {
  CommandReport a = cmd_check("free", "L3");
  CHECK(a.document["results"][0]["satisfied"] == "Zero");
  CHECK(a.document["results"][0]["alpha"] == "0");
  CHECK(a.exit_status == 0);

  CommandReport b = cmd_check("A0=kappa/r^2", "D");
  CHECK(b.document["results"][0]["satisfied"] == "Zero");
  CHECK(b.exit_status == 0);

  CommandReport c = cmd_check("free", "x1");
  CHECK(c.document["results"][0]["satisfied"] == "NonZero");
  CHECK_FALSE(c.document["results"][0]["failing_equations"].empty());
  CHECK(c.exit_status == 1);

  CHECK_THROWS_AS(cmd_check("B=1", "P1"), CommandError);
  CHECK_THROWS_AS(cmd_check("V=1;A0=2", "P1"), CommandError);
}

TEST_CASE("potential specs") {
  Potential p = parse_potential_spec("A1=x2; A2=-x1; V=x3");
  CHECK(zero_test(p.A1 - parse_expr("x2")).decision == Decision::Zero);
  CHECK(zero_test(p.V - parse_expr("x3")).decision == Decision::Zero);
  CHECK(zero_test(parse_potential_spec("free").V).decision == Decision::Zero);
}

TEST_CASE("algebra closes, fingerprints and witnesses") {
  CommandReport free = cmd_algebra({"@free"});
  const auto& f = free.document["results"][0];
  CHECK(f["closed"] == true);
  CHECK(f["fingerprint"]["dim"] == 13);
  CHECK(has_candidate(f, "schr(1,3)"));

  CommandReport osc = cmd_algebra({"Bm3(w)", "Bp3(w)", "I", "P0"});
  CHECK(has_candidate(osc.document["results"][0], "s_{4,6}"));

  CommandReport rot = cmd_algebra({"L1", "L2"});
  CHECK(rot.document["results"][0]["fingerprint"]["dim"] == 3);

  CommandReport open = cmd_algebra({"x1^3*P1", "P1"});
  CHECK(open.document["results"][0]["closed"] == false);
  CHECK(open.document["results"][0].contains("witness"));
  CHECK(open.exit_status == 1);
}

TEST_CASE("transform maps generators, operators and catalog items") {
  CommandReport osc = cmd_transform(catalog(), "oscillator:w", "P0");
  const auto& multiples = osc.document["results"][0]["multiple_of"];
  REQUIRE(multiples.size() == 1);
  CHECK(multiples[0]["generator"] == "Am(w)");

  CommandReport fall = cmd_transform(catalog(), "freefall:0,0,1", "L_free");
  const auto& pot = fall.document["results"][0]["potential"];
  CHECK(zero_test(parse_expr(pot["V"].get<std::string>()) - parse_expr("x3")).decision == Decision::Zero);
  CHECK(pot["A1"] == "0");

  CommandReport gauge = cmd_transform(catalog(), "gauge:x1*x2", "T1.8");
  CHECK(gauge.exit_status == 0);
  for (const auto& s : gauge.document["results"][0]["symmetries"]) CHECK(s["after"] == "Zero");
}

TEST_CASE("worked examples command") {
  CommandReport r = cmd_worked_examples();
  CHECK(r.document["results"].size() == 7);
  CHECK(r.exit_status == 1);
}
