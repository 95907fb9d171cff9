#include <doctest.h>

#include "schrosym/equiv.hpp"
#include "schrosym/eval.hpp"
#include "schrosym/liealg.hpp"

using namespace schrosym;

namespace {
Expr P(const char* s) { return parse_expr(s); }
DiffOperator Op(const char* s) { return parse_operator(s); }

bool same(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator d = a - b;
  for (const auto& [m, c] : d.coefficients())
    if (zero_test(c).decision != Decision::Zero) return false;
  return true;
}

/// Constant c with op = c * target, or nullopt.
std::optional<Expr> multiple_of(const DiffOperator& op, const DiffOperator& target) {
  SpanResult s = span_express(op, {target});
  if (s.status != SpanStatus::InSpan) return std::nullopt;
  return s.coefficients[0];
}

Potential oscillator_potential() { return Potential::from_A0(Expr(), Expr(), P("-w^2*(x1^2 + x2^2 + x3^2)/2")); }
}  // namespace

TEST_CASE("identity and inverse checks") {
  CHECK(same(conjugate_operator(identity_transformation(), Op("A")), Op("A")));
  CHECK_NOTHROW(mobius_time(P("1"), P("-1"), P("1")).verify());
  CHECK_NOTHROW(mobius_time(P("nu"), P("mu"), P("lambda")).verify());
  CHECK_NOTHROW(oscillator_map(P("w")).verify());
  CHECK_NOTHROW(free_fall_map({P("k1"), P("k2"), P("k3")}).verify());
  CHECK_NOTHROW(gauge_conjugation(P("x1*x2")).verify());
  CHECK_THROWS_AS(mobius_time(P("1"), P("2"), P("2")), std::invalid_argument);
  CHECK(same(conjugate_operator(mobius_general(P("1"), P("0"), P("0"), P("1")), Op("G2")), Op("G2")));
  CHECK_THROWS_AS(parse_transformation("spin:1"), std::invalid_argument);
}

TEST_CASE("mobius maps the free equation to itself") {
  for (auto tr : {mobius_time(P("1"), P("-1"), P("1")), mobius_time(P("nu"), P("mu"), P("lambda"))}) {
    TransformedOperator t = transform_schrodinger(tr, Op("L_free"));
    CHECK(same(t.normalized, Op("L_free")));
    CHECK(zero_test(t.factor).decision == Decision::NonZero);
    SpanResult s = span_express(conjugate_operator(tr, Op("P0")), {Op("P0"), Op("D"), Op("A")});
    CHECK(s.status == SpanStatus::InSpan);
  }
}

TEST_CASE("oscillator map with the multiplier fixed by exact conjugation") {
  PointTransformation tr = oscillator_map(P("w"));
  TransformedOperator t = transform_schrodinger(tr, Op("L_free"));
  CHECK(same(t.normalized, schrodinger_operator(oscillator_potential())));
  // factor 1/(2 w t_old) written in the new time
  CHECK(zero_test(t.factor - P("exp(-2*w*t)/(2*w)")).decision == Decision::Zero);

  const std::vector<std::pair<const char*, const char*>> transitions = {
      {"P0", "Am(w)"}, {"D", "P0"},      {"A", "Ap(w)"},  {"P1", "Bm1(w)"}, {"P2", "Bm2(w)"},
      {"P3", "Bm3(w)"}, {"G1", "Bp1(w)"}, {"G2", "Bp2(w)"}, {"G3", "Bp3(w)"}, {"L1", "L1"},
      {"L2", "L2"},    {"L3", "L3"}};
  for (const auto& [from, to] : transitions) {
    CAPTURE(from);
    auto c = multiple_of(conjugate_operator(tr, Op(from)), Op(to));
    REQUIRE(c.has_value());
    CHECK(zero_test(*c).decision == Decision::NonZero);
  }
  CHECK(*multiple_of(conjugate_operator(tr, Op("D")), Op("P0")) == P("1/w"));
}

TEST_CASE("printed oscillator multiplier does not conjugate exactly") {
  TransformedOperator t = transform_schrodinger(oscillator_map_printed(P("w")), Op("L_free"));
  CHECK_FALSE(same(t.normalized, schrodinger_operator(oscillator_potential())));
  CHECK_THROWS_AS(potential_from_operator(t.normalized), std::invalid_argument);
}

TEST_CASE("oscillator multiplier relation to the free kernel") {
  // The exact multiplier is the square root of t^(-3/2) exp(i x^2/(2t)).
  PointTransformation tr = oscillator_map(P("w"));
  Expr m = to_old(tr, tr.multiplier());
  Expr kernel = P("t^(-3/2)*exp(i*(x1^2 + x2^2 + x3^2)/(2*t))");
  CHECK(zero_test(m * m - kernel).decision == Decision::Zero);
  CHECK(apply(Op("L_free"), kernel).is_zero());
  // The factor printed with the inverse map is not a free solution.
  Expr printed = P("t^(-3/2)*exp(-i*(x1^2 + x2^2 + x3^2)/t)");
  CHECK(zero_test(apply(Op("L_free"), printed)).decision == Decision::NonZero);
}

TEST_CASE("free fall map as printed") {
  PointTransformation tr = free_fall_map({P("k1"), P("k2"), P("k3")});
  TransformedOperator t = transform_schrodinger(tr, Op("L_free"));
  CHECK(zero_test(t.factor - Expr(1)).decision == Decision::Zero);
  Potential p = potential_from_operator(t.normalized);
  CHECK(zero_test(p.V - P("k1*x1 + k2*x2 + k3*x3")).decision == Decision::Zero);
  CHECK(p.A1.is_zero());
  PointTransformation id = free_fall_map({Expr(), Expr(), Expr()});
  CHECK(same(conjugate_operator(id, Op("G1")), Op("G1")));
}

TEST_CASE("gauge transformation") {
  Potential p = gauge_apply(Potential::free(), P("x1*x2"));
  CHECK(p.A1 == P("x2"));
  CHECK(p.A2 == P("x1"));
  PointTransformation g = gauge_conjugation(P("x1*x2"));
  CHECK(same(conjugate_operator(g, schrodinger_operator(Potential::free())), schrodinger_operator(p)));
  CHECK(check_symmetry(p, conjugate_operator(g, Op("P1"))).satisfied == Decision::Zero);
  CHECK(check_symmetry(p, Op("P1")).satisfied == Decision::NonZero);
  CHECK_THROWS_AS(gauge_apply(Potential::free(), P("x3")), std::invalid_argument);
  Potential q = gauge_apply(Potential::free(), Expr());
  CHECK(schrodinger_operator(q) == schrodinger_operator(Potential::free()));
}

TEST_CASE("equivalence preserves symmetry") {
  // inverse-square potential with its conformal symmetries
  Potential p = Potential::from_A0(Expr(), Expr(), P("kappa/(x1^2 + x2^2 + x3^2)"));
  PointTransformation tr = oscillator_map(P("w"));
  TransformedOperator t = transform_schrodinger(tr, schrodinger_operator(p));
  Potential q = potential_from_operator(t.normalized);
  for (const char* s : {"D", "A", "P0", "L3"}) {
    CAPTURE(s);
    REQUIRE(check_symmetry(p, Op(s)).satisfied == Decision::Zero);
    CHECK(check_symmetry(q, conjugate_operator(tr, Op(s))).satisfied == Decision::Zero);
  }
}

TEST_CASE("transformation specs") {
  CHECK(parse_transformation("oscillator:w").name == "oscillator");
  CHECK(parse_transformation("mobius:1,-1,1").name == "mobius");
  CHECK(parse_transformation("freefall:0,0,1").name == "freefall");
  CHECK(parse_transformation("gauge:x1*x2").name == "gauge");
  CHECK_THROWS_AS(parse_transformation("mobius:1,2"), std::invalid_argument);
}
