#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schrosym/eval.hpp"
#include "schrosym/expr.hpp"
#include "schrosym/parse.hpp"

namespace schrosym {

/// Orders of differentiation in (t, x1, x2, x3).
using MultiIndex = std::array<int, 4>;

inline int total_order(const MultiIndex& m) { return m[0] + m[1] + m[2] + m[3]; }
inline MultiIndex unit_index(Coord c) {
  MultiIndex m{};
  m[static_cast<int>(c)] = 1;
  return m;
}

class OrderCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// QL is order 3 before the top-order terms cancel, so the cap must exceed 2.
inline constexpr int kDefaultOrderCap = 4;

/// Linear differential operator sum(coef * d^m), derivatives on the right.
/// The empty multi-index is the multiplication (unit) part.
class DiffOperator {
 public:
  DiffOperator() = default;
  static DiffOperator multiplication(const Expr& f);
  static DiffOperator identity() { return multiplication(Expr(1)); }
  static DiffOperator partial(Coord c, const Expr& coef = Expr(1));
  static DiffOperator term(const MultiIndex& m, const Expr& coef);

  const std::map<MultiIndex, Expr>& coefficients() const { return coeffs_; }
  Expr coefficient(const MultiIndex& m) const;
  Expr coefficient(Coord c) const { return coefficient(unit_index(c)); }
  Expr multiplier() const { return coefficient(MultiIndex{}); }
  int order() const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Value if this is a pure multiplication operator.
  std::optional<Expr> as_multiplication() const;

  DiffOperator operator-() const;
  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
  /// Left multiplication of every coefficient.
  friend DiffOperator operator*(const Expr& f, const DiffOperator& a);
  bool operator==(const DiffOperator& o) const;

  /// Maps every coefficient.
  template <class Fn>
  DiffOperator map_coefficients(Fn fn) const {
    DiffOperator r;
    for (const auto& [m, c] : coeffs_) r.add(m, fn(c));
    return r;
  }

  /// Human readable form, e.g. "i*d_t + (-i*t)*d_x1 - x1".
  std::string to_string() const;
  /// (multi-index, coefficient) pairs; the multi-index prints as "t,x1,x2,x3" orders.
  std::vector<std::pair<std::string, std::string>> serialize() const;
  static DiffOperator deserialize(const std::vector<std::pair<std::string, std::string>>& rows,
                                  const SymbolTable& symbols = SymbolTable::defaults());

 private:
  void add(const MultiIndex& m, const Expr& c);
  std::map<MultiIndex, Expr> coeffs_;
};

Expr apply(const DiffOperator& op, const Expr& psi);
DiffOperator compose(const DiffOperator& a, const DiffOperator& b, int cap = kDefaultOrderCap);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b, int cap = kDefaultOrderCap);

/// Time-independent fields with A3 = 0. V is the full multiplication term
/// gA0 + (e^2/2)(A1^2 + A2^2) when built from A0.
struct Potential {
  Expr A1, A2, V;
  Expr e{1}, g{1};
  std::optional<Expr> A0;

  static Potential from_A0(const Expr& A1, const Expr& A2, const Expr& A0, const Expr& e = Expr(1),
                           const Expr& g = Expr(1));
  static Potential from_scalar(const Expr& A1, const Expr& A2, const Expr& V, const Expr& e = Expr(1));
  static Potential free() { return from_A0(Expr(), Expr(), Expr()); }
  /// A1, A2 derived from generating functions F, G as d1F + d2G, d2F - d1G.
  static Potential from_generators(const Expr& F, const Expr& G, const Expr& A0);

  void validate() const;
};

/// L = i d_t + (1/2) Laplacian - i e (A1 d_1 + A2 d_2) - (i e / 2)(d_1 A1 + d_2 A2) - V.
DiffOperator schrodinger_operator(const Potential& p);

struct CoefficientDecision {
  MultiIndex index;
  ZeroTest test;
};

struct SymmetryCheck {
  Decision satisfied = Decision::Unknown;
  Expr alpha;
  DiffOperator residual;                   // [q, L] - alpha L
  std::vector<CoefficientDecision> failures;  // coefficients not decided Zero
};

/// [q, L] = alpha L with alpha read off the d_t coefficient.
/// q must be at most first order.
SymmetryCheck check_symmetry(const Potential& p, const DiffOperator& q);
SymmetryCheck check_symmetry(const Potential& p, const DiffOperator& q, const FunctionOracle& fns);
/// Same test against an arbitrary equation operator L whose d_t coefficient is nonzero.
SymmetryCheck check_symmetry_operator(const DiffOperator& L, const DiffOperator& q, const FunctionOracle& fns);

/// Free-equation generators and the exponential families:
///   P0, P1..P3, G1..G3, L1..L3, M12, M13, M23, D, A, I, L_free
///   Ap(w), Am(w), Bp1(w)..Bp3(w), Bm1(w)..Bm3(w)
DiffOperator named_generator(const std::string& name, const std::vector<Expr>& args = {});
bool is_generator_name(const std::string& name);
/// Arity of a generator taking expression arguments (0 for plain names).
int generator_arity(const std::string& name);

/// Operator expressions mixing generators, partials dt, d1, d2, d3 and
/// expressions (read as multiplication operators); '*' composes.
DiffOperator parse_operator(std::string_view text, const SymbolTable& symbols = SymbolTable::defaults());

}  // namespace schrosym
