#include <doctest.h>

#include "schrosym/expr.hpp"
#include "schrosym/parse.hpp"

using namespace schrosym;

namespace {
Expr P(const char* s) { return parse_expr(s); }
}  // namespace

TEST_CASE("canonical sums and products") {
  CHECK(P("x1 + x2") == P("x2 + x1"));
  CHECK(P("(x1 + x2)^2") == P("x1^2 + 2*x1*x2 + x2^2"));
  CHECK(P("x1 - x1").is_zero());
  CHECK(P("2*x1/4") == P("x1/2"));
  CHECK(P("i*i") == Expr(-1));
  CHECK(P("1.5") == Expr(Rational(3, 2)));
}

TEST_CASE("exponential merging and logarithms") {
  CHECK(P("exp(x1)*exp(x2)") == P("exp(x1 + x2)"));
  CHECK(P("exp(x1)^2") == P("exp(2*x1)"));
  CHECK(P("ln(exp(t))") == P("t"));
  CHECK(P("exp(2*ln(x1))") == P("x1^2"));
  CHECK(P("ln(x1*x2)") == P("ln(x1) + ln(x2)"));
}

TEST_CASE("radicals") {
  CHECK(P("sqrt(x1^2 + x2^2)^2") == P("x1^2 + x2^2"));
  CHECK(P("r^2") == P("x1^2 + x2^2 + x3^2"));
  CHECK(P("sqrt(4)") == Expr(2));
  CHECK(P("sqrt(2)*sqrt(2)") == Expr(2));
  CHECK(P("sqrt(-4)") == P("2*i"));
  CHECK(P("(x1^2+x2^2)^(-1/2)*(x1^2+x2^2)^(1/2)") == Expr(1));
}

TEST_CASE("derivatives") {
  CHECK(diff(P("x1^3"), Coord::X1) == P("3*x1^2"));
  CHECK(diff(P("r"), Coord::X1) == P("x1/r"));
  CHECK(diff(P("phi"), Coord::X1) == P("-x2/(x1^2+x2^2)"));
  CHECK(diff(P("rho"), Coord::X2) == P("x2/(x1^2+x2^2)"));
  CHECK(diff(P("F(t, x1*x2)"), Coord::X1) == P("x2*D2[F](t, x1*x2)"));
  CHECK(diff(P("D1[F](t)"), Coord::T) == P("D11[F](t)"));
  CHECK(diff(P("sin(t)"), Coord::T) == P("cos(t)"));
  CHECK(diff(P("arctan(x1)"), Coord::X1) == P("1/(1+x1^2)"));
  CHECK(diff(P("exp(i*t*x1)"), Coord::X1) == P("i*t*exp(i*t*x1)"));
}

TEST_CASE("substitution honors derivative multi-indices") {
  Bindings b;
  b.functions["F"] = FunctionBinding{{Coord::X1}, P("x1^3")};
  CHECK(substitute(P("D1[F](t^2)"), b) == P("3*t^4"));
  b.symbols["e"] = Expr(2);
  CHECK(substitute(P("e*x1"), b) == P("2*x1"));
}

TEST_CASE("trig rewriting cancels identities") {
  Expr s = P("sin(x1)^2 + cos(x1)^2 - 1");
  CHECK(clear_denominators(trig_to_exp(s)).is_zero());
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(P("x1 +"), ParseError);
  CHECK_THROWS_AS(P("unknown_name"), ParseError);
  CHECK_THROWS_AS(P("x1 $ 2"), ParseError);
  try {
    P("x1 + )");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}
