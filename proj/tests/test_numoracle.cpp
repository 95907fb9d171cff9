#include <doctest.h>

#include <cmath>

#include "schrosym/catalog.hpp"
#include "schrosym/numoracle.hpp"

using namespace schrosym;

namespace {
const TableEntry& entry(const std::string& id) {
  static const std::vector<TableEntry> c = load_catalog(default_catalog_path());
  for (const auto& e : c)
    if (e.id == id) return e;
  throw std::runtime_error("no entry " + id);
}

ResidualReport run(const Potential& p, const char* q, const GridSpec& g = {},
                   const TestWavefunction& psi = TestWavefunction{}) {
  DiffOperator op = parse_operator(q);
  return oracle_residual(p, op, check_symmetry(p, op).alpha, g, psi);
}

Potential anisotropic() { return instantiate(entry("T3.10"), {}, {{"w1", "1/2"}, {"w2", "3/4"}, {"w3", "1"}}); }
Potential landau() { return instantiate(entry("T2.9"), {}, {{"alpha", "1/2"}}); }
}  // namespace

TEST_CASE("test wavefunction closed form matches its expression") {
  for (int n = 0; n < 3; ++n) {
    TestWavefunction w = TestWavefunction::variant(n);
    GenericTestFunctions fns;
    for (const GridPoint& p : {GridPoint{0.2, 1, 1.5, 2}, GridPoint{0.5, 1.7, 1.1, 1.3}}) {
      NumericPoint np;
      for (int a = 0; a < 4; ++a) np.coords[a] = p[a];
      cplx e = eval_numeric(w.expr(), np, fns);
      CHECK(std::abs(e - w.value(p)) < 1e-13);
      CHECK(std::abs(w.value(p)) > 0.1);
    }
  }
}

TEST_CASE("free translation is exact up to rounding") {
  ResidualReport r = run(Potential::free(), "P1");
  CHECK(r.fd < 1e-10);
  CHECK(r.analytic < 1e-12);
  CHECK(r.samples == 128);
}

TEST_CASE("a multiplication operator is not a symmetry") {
  ResidualReport r = run(Potential::free(), "x1");
  CHECK(r.fd > 0.1);
  CHECK(std::abs(r.fd - r.analytic) < 1e-6 * r.analytic);
}

TEST_CASE("anisotropic oscillator boost passes at the default grid") {
  ResidualReport r = run(anisotropic(), "Bp3(1)");
  CHECK(r.fd < 1e-8);
  CHECK(r.analytic < 1e-12);
}

TEST_CASE("scaled potential breaks the boost") {
  Potential p = anisotropic();
  Potential scaled = Potential::from_scalar(p.A1, p.A2, Expr(Rational(101, 100)) * p.V);
  DiffOperator q = parse_operator("Bp3(1)");
  ResidualReport r = oracle_residual(scaled, q, check_symmetry(p, q).alpha, GridSpec{}, TestWavefunction{});
  CHECK(r.fd > 1e-4);
  CHECK(check_symmetry(scaled, q).satisfied == Decision::NonZero);
}

TEST_CASE("halving h divides the fourth order residual by about sixteen") {
  GridSpec coarse, fine;
  coarse.h = coarse.tau = 1.0 / 16;
  fine.h = fine.tau = 1.0 / 32;
  const double ratio = run(landau(), "P1 - 1/2*x2", coarse).fd / run(landau(), "P1 - 1/2*x2", fine).fd;
  CHECK(ratio > 12);
  CHECK(ratio < 20);
}

TEST_CASE("convergence slopes match the stencil order") {
  DiffOperator q = parse_operator("P1 - 1/2*x2");
  Potential p = landau();
  Expr alpha = check_symmetry(p, q).alpha;
  const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32};
  for (int order : {2, 4}) {
    CAPTURE(order);
    GridSpec g;
    g.order = order;
    ConvergenceStudy s = convergence_study(p, q, alpha, g, TestWavefunction{}, hs);
    REQUIRE(s.rows.size() == 3);
    CHECK(std::abs(s.slope - order) < 0.5);
  }
}

TEST_CASE("grid shift keeps the verdict") {
  GridSpec g, shifted;
  shifted.shift = {g.tau / 3, g.h / 3, g.h / 3, g.h / 3};
  for (const char* q : {"Bp3(1)", "Bm1(1/2)"}) {
    CHECK(run(anisotropic(), q, g).fd < 1e-8);
    CHECK(run(anisotropic(), q, shifted).fd < 1e-8);
  }
  CHECK(run(anisotropic(), "P3", shifted).fd > 1e-4);
}

TEST_CASE("wavefunction family members agree") {
  for (int n = 0; n < 3; ++n) {
    CAPTURE(n);
    CHECK(run(landau(), "L3", GridSpec{}, TestWavefunction::variant(n)).fd < 1e-8);
  }
}

TEST_CASE("singular loci within the margin are refused") {
  Potential p = instantiate(entry("T1.8"), {}, {{"kappa", "1"}});
  GridSpec g;
  g.lo = {0, 0, 0};
  g.hi = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(run(p, "D", g), OracleError);
  CHECK(run(p, "D").fd < 1e-8);
}

TEST_CASE("grid validation") {
  GridSpec g;
  g.h = 0;
  CHECK_THROWS_AS(g.validate(), OracleError);
  g = GridSpec{};
  g.order = 3;
  CHECK_THROWS_AS(g.validate(), OracleError);
  g = GridSpec{};
  g.h = 0.25;
  CHECK_THROWS_AS(g.validate(), OracleError);
  CHECK_NOTHROW(GridSpec{}.validate());
}

TEST_CASE("oracle config") {
  OracleConfig c = load_oracle_config(std::string(SCHROSYM_TEST_DATA_DIR) + "/oracle.json");
  CHECK(c.grid.h == 1.0 / 64);
  CHECK(c.grid.order == 4);
  CHECK(c.tolerance == 1e-8);
  CHECK(c.study_spacings.size() == 3);
  OracleConfig d = parse_oracle_config(R"({"grid": {"h": 0.03125, "order": 2, "extent": [[1, 2], [1, 3], [2, 3]]}})");
  CHECK(d.grid.tau == 0.03125);
  CHECK(d.grid.hi[1] == 3);
  CHECK_THROWS_AS(parse_oracle_config(R"({"grid": {"order": 5}})"), OracleError);
  CHECK_THROWS_AS(parse_oracle_config("{"), OracleError);
  CHECK_THROWS_AS(parse_oracle_config(R"({"oracle": {"tolerance": -1}})"), OracleError);
}
