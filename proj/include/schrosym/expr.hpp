#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrosym/number.hpp"

namespace schrosym {

/// Independent variables. Everything is Cartesian; cylindrical and spherical
/// quantities are macros that expand to Cartesian expressions.
enum class Coord : int { T = 0, X1 = 1, X2 = 2, X3 = 3 };

inline constexpr std::array<Coord, 4> kAllCoords = {Coord::T, Coord::X1, Coord::X2, Coord::X3};
inline constexpr std::array<Coord, 3> kSpaceCoords = {Coord::X1, Coord::X2, Coord::X3};

const char* coord_name(Coord c);
std::optional<Coord> coord_from_name(const std::string& name);
inline Coord space_coord(int a) { return static_cast<Coord>(a); }  // a = 1, 2, 3

enum class AtomKind {
  Coordinate,
  Parameter,
  NumberRoot,  // positive integer base with fractional exponent, e.g. 2^(1/2)
  Elementary,
  Function,
  PolyPower,   // a multi-term primitive polynomial raised to a non-positive-integer power
};

enum class Elementary { Exp, Ln, Sin, Cos, Tan, Tanh, Arctan };
const char* elementary_name(Elementary e);

struct AtomNode;
using Atom = std::shared_ptr<const AtomNode>;

struct Factor {
  Atom atom;
  Rational exponent;
};

/// coef * prod(factor.atom ^ factor.exponent); factors sorted by atom key.
struct Term {
  Complex coef;
  std::vector<Factor> factors;
  std::string mono_key;
};

struct ExprNode;

/// Immutable symbolic expression held in canonical form: a sum of monomials
/// with exact Q[i] coefficients over a totally ordered atom basis. Products
/// are expanded over sums, exponential factors are merged, radicals of
/// polynomial bases keep exponents below one. Equality is structural on the
/// canonical form.
class Expr {
 public:
  Expr();
  Expr(long v);
  Expr(int v) : Expr(static_cast<long>(v)) {}
  Expr(const Rational& q);
  Expr(const Complex& c);

  static Expr coord(Coord c);
  static Expr param(const std::string& name);
  static Expr imag() { return Expr(Complex::i()); }
  /// Application of an arbitrary function symbol carrying a derivative multi-index.
  static Expr function(const std::string& name, std::vector<Expr> args, std::vector<int> deriv = {});
  static Expr from_atom(const Atom& a, const Rational& exponent = 1);

  const std::vector<Term>& terms() const;
  const std::string& key() const;
  bool is_zero() const { return terms().empty(); }
  /// Value if the expression is a pure number.
  std::optional<Complex> as_number() const;
  /// True when no coordinate occurs anywhere (parameters allowed).
  bool is_constant() const;
  bool depends_on(Coord c) const;

  bool operator==(const Expr& o) const { return key() == o.key(); }
  bool operator!=(const Expr& o) const { return !(*this == o); }

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  std::string to_string() const;

  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct AtomNode {
  AtomKind kind = AtomKind::Parameter;
  std::string name;  // coordinate, parameter or function name
  Coord coord = Coord::T;
  Elementary elem = Elementary::Exp;
  Rational number;               // NumberRoot base
  std::vector<Expr> args;        // Elementary: 1; Function: n; PolyPower: base
  std::vector<int> deriv;        // Function derivative multi-index per slot
  unsigned coord_mask = 0;       // bit c set iff coordinate c occurs inside
  std::string key;
};

struct ExprNode {
  std::vector<Term> terms;
  std::string key;
};

inline const std::vector<Term>& Expr::terms() const { return node_->terms; }
inline const std::string& Expr::key() const { return node_->key; }

Expr pow(const Expr& base, const Rational& exponent);
inline Expr pow(const Expr& base, long n) { return pow(base, Rational(n)); }
Expr elementary(Elementary kind, const Expr& arg);
inline Expr exp(const Expr& u) { return elementary(Elementary::Exp, u); }
inline Expr ln(const Expr& u) { return elementary(Elementary::Ln, u); }
inline Expr sin(const Expr& u) { return elementary(Elementary::Sin, u); }
inline Expr cos(const Expr& u) { return elementary(Elementary::Cos, u); }
inline Expr tan(const Expr& u) { return elementary(Elementary::Tan, u); }
inline Expr tanh(const Expr& u) { return elementary(Elementary::Tanh, u); }
inline Expr arctan(const Expr& u) { return elementary(Elementary::Arctan, u); }
inline Expr sqrt(const Expr& u) { return pow(u, Rational(1, 2)); }

/// Exact partial derivative.
Expr diff(const Expr& e, Coord var);
Expr diff(const Expr& e, Coord var, int times);

/// Re-normalizes every node bottom-up. Expressions are canonical on
/// construction, so this is the identity up to key equality; it exists to
/// re-apply the rewrite set after external tree surgery.
Expr canonicalize(const Expr& e);

/// Rewrites sin, cos, tan, tanh into complex exponentials.
Expr trig_to_exp(const Expr& e);

/// Binding of a function symbol to a closed form written in slot variables:
/// F(u1, .., un) := body[slots[k] -> uk].
struct FunctionBinding {
  std::vector<Coord> slots;
  Expr body;
};

struct Bindings {
  std::map<std::string, Expr> symbols;  // coordinates and parameters by name
  std::map<std::string, FunctionBinding> functions;
};

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simultaneous substitution followed by canonicalization. Function bindings
/// honor derivative multi-indices (the bound body is differentiated first).
Expr substitute(const Expr& e, const Bindings& b);

/// Coefficient-free helpers used by linear solvers.
/// Splits each term into the part free of coordinates and the part that depends
/// on them; returns map coordinate-monomial key -> (monomial, constant coefficient).
struct SplitTerm {
  Expr monomial;
  Expr coefficient;
};
std::map<std::string, SplitTerm> split_by_coordinate_monomials(const Expr& e);

/// Multiplies out every negative exponent (denominator) so that the result is
/// a polynomial in its atoms. Zero iff the input is zero on its domain.
Expr clear_denominators(const Expr& e);

/// 1/e with a sum first brought over a common denominator, so that
/// a/(b) + c/(b^2) inverts to b^2/(a b + c).
Expr reciprocal(const Expr& e);

/// Collects parameter names occurring anywhere in e.
void collect_parameters(const Expr& e, std::vector<std::string>& out);
/// Collects function symbol names occurring anywhere in e.
void collect_functions(const Expr& e, std::vector<std::string>& out);
/// Records the number of arguments of every function application in e.
/// Throws ArityError when one name is applied with different arities.
void collect_function_arities(const Expr& e, std::map<std::string, std::size_t>& out);

}  // namespace schrosym
