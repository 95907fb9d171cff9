#include <doctest.h>

#include "schrosym/diffop.hpp"

using namespace schrosym;

namespace {
Expr P(const char* s) { return parse_expr(s); }
DiffOperator Op(const char* s) { return parse_operator(s); }
const Expr i = Expr::imag();
}  // namespace

TEST_CASE("apply") {
  CHECK(apply(Op("d1"), P("x1^2")) == P("2*x1"));
  CHECK(apply(Op("L_free"), P("exp(i*(x1 + 2*x2 - 5*t/2))")).is_zero());
  CHECK(apply(Op("P3"), P("F(x1, x2)")).is_zero());
}

TEST_CASE("compose and commutator basics") {
  CHECK(commutator(Op("d1"), Op("x1")) == DiffOperator::identity());
  CHECK(compose(Op("P1"), Op("P2")) == compose(Op("P2"), Op("P1")));
  CHECK(commutator(Op("P1"), Op("P2")).is_zero());
  CHECK(commutator(Op("P1"), Op("G1")) == i * DiffOperator::identity());
  CHECK(commutator(Op("P1"), Op("G2")).is_zero());
  CHECK(commutator(Op("L1"), Op("L2")) == i * Op("L3"));
  CHECK_THROWS_AS(compose(Op("L_free"), Op("L_free"), 3), OrderCapError);
}

TEST_CASE("D brackets as computed from its definition") {
  // D = 2t P0 - x.P + 3i/2 gives the opposite sign to the printed table for these three
  CHECK(commutator(Op("D"), Op("P0")) == Expr(-2) * i * Op("P0"));
  CHECK(commutator(Op("D"), Op("P1")) == -i * Op("P1"));
  CHECK(commutator(Op("D"), Op("G1")) == i * Op("G1"));
  CHECK(commutator(Op("P0"), Op("A")) == i * Op("D"));
  CHECK(commutator(Op("D"), Op("A")) == Expr(2) * i * Op("A"));
}

TEST_CASE("schrodinger operator") {
  CHECK(schrodinger_operator(Potential::free()) == Op("L_free"));
  Potential landau = Potential::from_A0(P("-alpha*x2"), P("alpha*x1"), Expr());
  DiffOperator L = schrodinger_operator(landau);
  CHECK(L.coefficient(Coord::X1) == P("i*alpha*x2"));
  CHECK(L.multiplier() == P("-alpha^2*(x1^2 + x2^2)/2"));
  Potential osc = Potential::from_A0(Expr(), Expr(), P("-omega^2*x3^2/2"));
  CHECK(schrodinger_operator(osc) == Op("L_free") + DiffOperator::multiplication(P("omega^2*x3^2/2")));
  CHECK_THROWS_AS(Potential::from_A0(P("t"), Expr(), Expr()), std::invalid_argument);
}

TEST_CASE("free generators are symmetries") {
  Potential free = Potential::free();
  for (const char* g : {"P0", "P1", "P2", "P3", "G1", "G2", "G3", "L1", "L2", "L3", "D", "A", "I"}) {
    CAPTURE(g);
    SymmetryCheck c = check_symmetry(free, Op(g));
    CHECK(c.satisfied == Decision::Zero);
  }
  CHECK(check_symmetry(free, Op("L3")).alpha.is_zero());
  CHECK(check_symmetry(free, Op("D")).alpha == Expr(-2) * i);
  // the conformal generator with -r^2/2 fails
  CHECK(check_symmetry(free, Op("t*D - t^2*P0 - r^2/2")).satisfied == Decision::NonZero);
  CHECK(check_symmetry(free, Op("x1")).satisfied == Decision::NonZero);
  CHECK_THROWS_AS(check_symmetry(free, Op("L_free")), std::invalid_argument);
}

TEST_CASE("exponential generators") {
  Potential osc3 = Potential::from_A0(Expr(), Expr(), P("-omega3^2*x3^2/2"));
  CHECK(check_symmetry(osc3, Op("Bp3(omega3)")).satisfied == Decision::Zero);
  CHECK(check_symmetry(osc3, Op("Bm3(omega3)")).satisfied == Decision::Zero);
  Potential osc = Potential::from_A0(Expr(), Expr(), P("-omega^2*r^2/2"));
  CHECK(check_symmetry(osc, Op("Ap(omega)")).satisfied == Decision::Zero);
  CHECK(check_symmetry(osc, Op("Am(omega)")).satisfied == Decision::Zero);
  CHECK(commutator(Op("Bm3(omega)"), Op("Bp3(omega)")) == Expr(2) * i * P("omega") * DiffOperator::identity());
}

TEST_CASE("serialization round trip") {
  DiffOperator a = Op("A");
  CHECK(DiffOperator::deserialize(a.serialize()) == a);
  CHECK(Op("x1*P2 - x2*P1") == Op("L3"));
  CHECK(Op("M12") == Op("L3"));
  CHECK_THROWS_AS(Op("Bp3()"), ParseError);
}
