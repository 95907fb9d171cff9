#include <doctest.h>

#include <cmath>

#include "schrosym/eval.hpp"
#include "schrosym/parse.hpp"

using namespace schrosym;

namespace {
Expr P(const char* s) { return parse_expr(s); }

cplx at(const Expr& e, double t, double x1, double x2, double x3) {
  return eval_numeric(e, make_point({t, x1, x2, x3}, e), GenericTestFunctions());
}
}  // namespace

TEST_CASE("numeric evaluation") {
  CHECK(std::abs(at(P("r^2"), 0, 1, 2, 2) - 9.0) < 1e-12);
  CHECK(std::abs(at(P("exp(i*pi)"), 0, 0, 0, 0) + 1.0) < 1e-12);
  NumericPoint p = make_point({0, 1, 2, 2}, P("kappa"));
  p.params["kappa"] = 3;
  CHECK(std::abs(eval_numeric(P("kappa/r^2"), p, GenericTestFunctions()) - 1.0 / 3) < 1e-12);
  CHECK_THROWS_AS(at(P("1/x1"), 0, 0, 1, 1), SingularityError);
  CHECK_THROWS_AS(at(P("ln(x1)"), 0, 0, 1, 1), SingularityError);
}

TEST_CASE("derivative of phi agrees with central difference") {
  Expr phi = P("phi");
  Expr d = diff(phi, Coord::X1);
  double h = 1e-5;
  cplx fd = (at(phi, 0, 1 + h, 2, 0) - at(phi, 0, 1 - h, 2, 0)) / (2 * h);
  CHECK(std::abs(at(d, 0, 1, 2, 0) - fd) < 1e-8);
  CHECK(std::abs(at(d, 0, 1, 2, 0) - (-2.0 / 5)) < 1e-12);
}

TEST_CASE("tan identity checked numerically and symbolically") {
  Expr e = P("tan(x1) - sin(x1)/cos(x1)");
  CHECK(std::abs(at(e, 0, 0.7, 0, 0)) < 1e-12);
  CHECK(is_zero(e) == Decision::Zero);
}

TEST_CASE("generic test functions carry exact derivatives") {
  GenericTestFunctions g;
  double h = 1e-5;
  cplx u(0.4, 0), v(0.3, 0);
  cplx fd = (g.value("F", {u + h, v}, {0, 0}) - g.value("F", {u - h, v}, {0, 0})) / (2 * h);
  CHECK(std::abs(g.value("F", {u, v}, {1, 0}) - fd) < 1e-8);
}

TEST_CASE("bound functions differentiate their bodies") {
  BoundFunctions b({{"F", FunctionBinding{{Coord::X1, Coord::X2}, P("x1^2*x2")}}});
  CHECK(std::abs(b.value("F", {2.0, 3.0}, {1, 1}) - 4.0) < 1e-12);
  CHECK(std::abs(b.value("F", {2.0, 3.0}, {0, 0}) - 12.0) < 1e-12);
}

TEST_CASE("three-way zero test") {
  CHECK(is_zero(Expr()) == Decision::Zero);
  ZeroTest z = zero_test(P("x1"));
  CHECK(z.decision == Decision::NonZero);
  CHECK(z.witness.has_value());
  CHECK(is_zero(P("sin(x1)^2 + cos(x1)^2 - 1")) == Decision::Zero);
  CHECK(is_zero(P("F(x1, x2) - F(x1, x2)")) == Decision::Zero);
  CHECK(is_zero(P("D1[F](x1, x2)")) == Decision::NonZero);
  CHECK(is_zero(P("x1/r - x1*r^(-1)")) == Decision::Zero);
  // numerically tiny but symbolically nonzero stays honest
  CHECK(is_zero(P("exp(-100*x1)")) != Decision::Zero);
}
