#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrosym/expr.hpp"

namespace schrosym {

using cplx = std::complex<double>;

/// Raised when evaluation hits a pole, ln(0) or a non-finite value.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric values for every coordinate and parameter.
struct NumericPoint {
  std::array<cplx, 4> coords{};
  std::map<std::string, cplx> params;

  cplx coord(Coord c) const { return coords[static_cast<int>(c)]; }
};

/// Supplies values (and derivatives by multi-index) of function symbols.
class FunctionOracle {
 public:
  virtual ~FunctionOracle() = default;
  virtual cplx value(const std::string& name, const std::vector<cplx>& args, const std::vector<int>& deriv) const = 0;
};

/// Every function symbol is a fixed sum of three exponentials whose rates
/// and weights depend only on the symbol name, so derivatives are exact.
class GenericTestFunctions : public FunctionOracle {
 public:
  cplx value(const std::string& name, const std::vector<cplx>& args, const std::vector<int>& deriv) const override;
};

/// Function symbols bound to closed forms; unbound names fall back to
/// GenericTestFunctions.
class BoundFunctions : public FunctionOracle {
 public:
  explicit BoundFunctions(std::map<std::string, FunctionBinding> bindings) : bindings_(std::move(bindings)) {}
  cplx value(const std::string& name, const std::vector<cplx>& args, const std::vector<int>& deriv) const override;

 private:
  std::map<std::string, FunctionBinding> bindings_;
  GenericTestFunctions fallback_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Expr> derived_;  // name + multi-index -> differentiated body
};

cplx eval_numeric(const Expr& e, const NumericPoint& p, const FunctionOracle& fns);

/// Deterministic parameter value used wherever a parameter is left free.
cplx generic_parameter_value(const std::string& name);

/// Default numeric point: the given coordinates and generic parameter values.
NumericPoint make_point(const std::array<double, 4>& coords, const Expr& e);

enum class Decision { Zero, NonZero, Unknown };
const char* decision_name(Decision d);

struct ZeroTest {
  Decision decision = Decision::Unknown;
  std::optional<std::array<double, 4>> witness;  // coordinates where NonZero was observed
  cplx witness_value{};
};

/// Symbolic zero is authoritative; otherwise NonZero needs a sample value
/// bounded away from zero. Anything else is Unknown.
ZeroTest zero_test(const Expr& e);
ZeroTest zero_test(const Expr& e, const FunctionOracle& fns);
inline Decision is_zero(const Expr& e) { return zero_test(e).decision; }

/// Sample points tried in order; singular points are skipped.
const std::vector<std::array<double, 4>>& sample_schedule();
inline constexpr int kSamplePoints = 3;
inline constexpr double kNonZeroThreshold = 1e-9;

}  // namespace schrosym
