#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "schrosym/expr.hpp"

namespace schrosym {

/// Declared names visible to the parser. Coordinates (t, x1, x2, x3), the
/// imaginary unit i, elementary functions and the coordinate macros
/// (r, rt, rho, phi, theta) are always available.
struct SymbolTable {
  std::set<std::string> parameters;
  std::map<std::string, int> functions;  // name -> arity, -1 for any

  /// Coupling constants, frequencies and the usual table parameters.
  static SymbolTable defaults();

  bool is_parameter(const std::string& n) const { return parameters.count(n) > 0; }
  bool is_function(const std::string& n) const { return functions.count(n) > 0; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' rational)?
///   base   := number | ident | ident '(' args ')' | 'D' digit+ '[' ident ']' '(' args ')' | '(' expr ')'
/// D12[F](u, v) is the derivative of F once in slot 1 and once in slot 2.
/// diff(expr, x1) differentiates explicitly.
Expr parse_expr(std::string_view text, const SymbolTable& symbols = SymbolTable::defaults());

/// Coordinate macros: r, rt (cylindrical radius), rho = ln(rt), phi, theta.
Expr coordinate_macro(const std::string& name);
bool is_coordinate_macro(const std::string& name);

}  // namespace schrosym
