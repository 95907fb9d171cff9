#include <doctest.h>

#include "schrosym/liealg.hpp"

using namespace schrosym;

namespace {
Expr P(const char* s) { return parse_expr(s); }
DiffOperator Op(const char* s) { return parse_operator(s); }
const Expr i = Expr::imag();

ClosureResult close(std::vector<std::string> names) {
  std::vector<DiffOperator> ops;
  for (const auto& n : names) ops.push_back(Op(n.c_str()));
  return close_algebra(ops, names);
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}
}  // namespace

TEST_CASE("span_express") {
  SpanResult s = span_express(Op("2*P1 - 3*alpha*I"), {Op("P1"), Op("I")});
  REQUIRE(s.status == SpanStatus::InSpan);
  CHECK(s.coefficients[0] == Expr(2));
  CHECK(s.coefficients[1] == P("-3*alpha"));
  CHECK(span_express(Op("x1*P1"), {Op("P1"), Op("I")}).status == SpanStatus::NotInSpan);
  // r^2 written two ways still resolves through the monomial split
  CHECK(span_express(Op("A"), {Op("t*D - t^2*P0"), Op("x1^2 + x2^2 + x3^2")}).status == SpanStatus::InSpan);
}

TEST_CASE("registry algebras satisfy Jacobi") {
  for (const auto& name : registry_names()) {
    auto sc = registry_algebra(name);
    if (!sc) continue;
    CAPTURE(name);
    CHECK_NOTHROW(sc->check_identities());
  }
  CHECK(fingerprint(*registry_algebra("schr(1,3)")).dim == 13);
  CHECK(fingerprint(*registry_algebra("s_{9,3}")).dim == 9);
}

TEST_CASE("rotations close to so(3)") {
  ClosureResult c = close({"L1", "L2"});
  REQUIRE(c.closed);
  CHECK(c.basis.size() == 3);
  AlgebraReport rep = analyze(c.constants);
  CHECK(match_label("so(3)", rep.generic).verdict == LabelVerdict::Match);
  CHECK(match_label("n_{3,1}", rep.generic).verdict == LabelVerdict::Mismatch);
  CHECK(has(rep.candidates, "so(3)"));
  CHECK(has(rep.candidates, "sl(2,R)"));  // the invariants are complex ones
}

TEST_CASE("magnetic translations give Heisenberg with alpha stratum") {
  ClosureResult c = close({"P1 - alpha*x2", "P2 + alpha*x1", "I"});
  REQUIRE(c.closed);
  // [P2 + alpha x1, P1 - alpha x2] = 2 i alpha I
  CHECK(c.constants.c[1][0][2] == Expr(2) * i * P("alpha"));
  AlgebraReport rep = analyze(c.constants);
  CHECK(match_label("n_{3,1}", rep.generic).verdict == LabelVerdict::Match);
  REQUIRE(rep.strata.size() == 1);
  CHECK(rep.strata[0].condition == "alpha=0");
  CHECK(match_label("3n_{1,1}", rep.strata[0].fingerprint).verdict == LabelVerdict::Match);
}

TEST_CASE("kappa branches of a rotation with time shift") {
  ClosureResult c = close({"L3 + kappa*t", "P0", "I"});
  REQUIRE(c.closed);
  AlgebraReport rep = analyze(c.constants);
  CHECK(match_label("n_{3,1}", rep.generic).verdict == LabelVerdict::Match);
  REQUIRE(rep.strata.size() == 1);
  CHECK(match_label("3n_{1,1}", rep.strata[0].fingerprint).verdict == LabelVerdict::Match);
}

TEST_CASE("free equation algebra is schr(1,3)") {
  ClosureResult c = close({"P0", "P1", "P2", "P3", "G1", "G2", "G3", "L1", "L2", "L3", "D", "A", "I"});
  REQUIRE(c.closed);
  CHECK(c.basis.size() == 13);
  CHECK(match_label("schr(1,3)", fingerprint(c.constants)).verdict == LabelVerdict::Match);
}

TEST_CASE("oscillator operators reproduce the registry constants") {
  ClosureResult c = close({"Bp1(1)", "Bm1(1)", "Bp2(1)", "Bm2(1)", "Bp3(2)", "Bm3(2)", "L3", "P0", "I"});
  REQUIRE(c.closed);
  Fingerprint fp = fingerprint(c.constants);
  CHECK(match_label("s_{9,3}", fp).verdict == LabelVerdict::Match);
  ClosureResult d = close({"Bp1(w1)", "Bm1(w1)", "Bp2(w2)", "Bm2(w2)", "Bp3(w3)", "Bm3(w3)", "P0", "I"});
  REQUIRE(d.closed);
  CHECK(match_label("s_{8,2}", fingerprint(d.constants)).verdict == LabelVerdict::Match);
}

TEST_CASE("closure reports the offending commutator") {
  ClosureResult c = close_algebra({Op("P1"), Op("x1^2")}, {"P1", "q"}, 2);
  CHECK_FALSE(c.closed);
  CHECK(c.failure.find("[P1,q]") != std::string::npos);
}

TEST_CASE("coarse labels and direct sums") {
  ClosureResult c = close({"P3", "G3", "L3 + kappa*t", "P0", "I"});
  REQUIRE(c.closed);
  Fingerprint fp = fingerprint(c.constants);
  CHECK(fp.nilpotent);
  LabelMatch m = match_label("s_{5,14}", fp);
  CHECK(m.coarse);
  CHECK(m.verdict == LabelVerdict::Mismatch);
  CHECK(match_label("nonsense_{1}", fp).verdict == LabelVerdict::Indeterminate);
}
