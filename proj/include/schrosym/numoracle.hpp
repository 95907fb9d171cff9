#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrosym/diffop.hpp"

namespace schrosym {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using GridPoint = std::array<double, 4>;  // (t, x1, x2, x3)

/// Sample box, stencil spacings and stencil order.
struct GridSpec {
  std::array<double, 3> lo{1, 1, 1}, hi{2, 2, 2};
  double t_lo = 0.2, t_hi = 0.6;
  int points = 4;       // samples per space axis
  int time_points = 2;  // samples in t
  double h = 1.0 / 64;    // space spacing
  double tau = 1.0 / 64;  // time spacing
  int order = 4;          // 2 or 4
  double margin = 0.5;    // probed distance to singular loci
  GridPoint shift{};      // origin shift applied to every sample
  unsigned threads = 4;

  /// Throws OracleError on nonpositive spacings, unknown order, empty box,
  /// or a margin smaller than the nested stencil reach.
  void validate() const;
  std::vector<GridPoint> samples() const;
};

/// psi = (1 + b.x + c t + i d.x) exp(-|x - x0|^2 / (2 s^2) + i k.x - i w t).
/// The modulus of the prefactor is at least its real part, which stays
/// positive on the default box.
struct TestWavefunction {
  std::array<Rational, 3> center{Rational(3, 2), Rational(3, 2), Rational(3, 2)};
  Rational sigma{2};
  std::array<Rational, 3> k{Rational(3, 10), Rational(-1, 5), Rational(1, 10)};
  Rational omega{1, 4};
  std::array<Rational, 3> b{Rational(0), Rational(1, 10), Rational(1, 20)};
  Rational c{1, 20};
  std::array<Rational, 3> d{Rational(1, 5), Rational(0), Rational(1, 10)};

  cplx value(const GridPoint& p) const;
  std::complex<long double> extended_value(const GridPoint& p) const;
  Expr expr() const;
  /// A few fixed members of the family.
  static TestWavefunction variant(int n);
};

struct OracleConfig {
  GridSpec grid;
  double tolerance = 1e-8;
  std::vector<double> study_spacings{1.0 / 8, 1.0 / 16, 1.0 / 32};
};

/// Keys: grid.h, grid.tau, grid.order, grid.extent ([lo, hi] per space axis or
/// one pair for all), grid.time ([lo, hi]), grid.points, grid.time_points,
/// grid.margin, grid.threads, oracle.tolerance, oracle.study_spacings.
OracleConfig parse_oracle_config(const std::string& json_text);
OracleConfig load_oracle_config(const std::string& path);

struct ResidualReport {
  double fd = 0;        // max |(QL - LQ - alpha L) psi| / (1 + |L psi|), stencils throughout
  double analytic = 0;  // same norm of the symbolic residual operator on exact derivatives of psi
  GridPoint worst{};    // sample where fd peaks
  std::size_t samples = 0;
};

/// Free parameters take generic_parameter_value unless listed in `parameters`.
ResidualReport oracle_residual(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                               const TestWavefunction& psi, const FunctionOracle& fns,
                               const std::map<std::string, double>& parameters = {});
ResidualReport oracle_residual(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                               const TestWavefunction& psi);
double residual_norm(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                     const TestWavefunction& psi);

struct ConvergenceRow {
  double h = 0;
  double residual = 0;
};
struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope = 0;  // least-squares slope of log residual against log h
};

/// Runs the fd residual with h = tau = each spacing.
ConvergenceStudy convergence_study(const Potential& p, const DiffOperator& q, const Expr& alpha, GridSpec g,
                                   const TestWavefunction& psi, const std::vector<double>& spacings,
                                   const FunctionOracle& fns);
ConvergenceStudy convergence_study(const Potential& p, const DiffOperator& q, const Expr& alpha, GridSpec g,
                                   const TestWavefunction& psi, const std::vector<double>& spacings);

}  // namespace schrosym
