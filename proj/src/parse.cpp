#include "schrosym/parse.hpp"

#include "parser_impl.hpp"

namespace schrosym {

SymbolTable SymbolTable::defaults() {
  SymbolTable st;
  for (const char* p : {"e", "g", "w", "w1", "w2", "w3", "omega", "omega1", "omega2", "omega3", "kappa", "mu",
                        "nu", "alpha", "beta", "lambda", "a", "b", "c", "k", "k1", "k2", "k3", "pi"})
    st.parameters.insert(p);
  for (const char* f : {"F", "G", "R", "Ft", "Gt", "Phi", "K", "G1", "G2", "R1", "R2", "g1", "g2", "a1", "a2",
                        "b1", "b2", "f", "h", "chi", "psi"})
    st.functions[f] = -1;
  return st;
}

bool is_coordinate_macro(const std::string& name) {
  return name == "r" || name == "rt" || name == "rho" || name == "phi" || name == "theta";
}

Expr coordinate_macro(const std::string& name) {
  const Expr x1 = Expr::coord(Coord::X1), x2 = Expr::coord(Coord::X2), x3 = Expr::coord(Coord::X3);
  const Expr rt = sqrt(x1 * x1 + x2 * x2);
  if (name == "r") return sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  if (name == "rt") return rt;
  if (name == "rho") return ln(rt);
  if (name == "phi") return arctan(x2 / x1);
  if (name == "theta") return arctan(rt / x3);
  throw std::invalid_argument("unknown coordinate macro " + name);
}

namespace {

struct ExprHooks {
  Expr from_expr(Expr e) { return e; }
  std::optional<Expr> as_expr(const Expr& e) { return e; }
  Expr add(const Expr& a, const Expr& b) { return a + b; }
  Expr sub(const Expr& a, const Expr& b) { return a - b; }
  Expr mul(const Expr& a, const Expr& b) { return a * b; }
  Expr neg(const Expr& a) { return -a; }
  std::optional<Expr> identifier(const std::string&) { return std::nullopt; }
  template <class P>
  std::optional<Expr> call(const std::string&, P&, std::size_t) {
    return std::nullopt;
  }
};

}  // namespace

Expr parse_expr(std::string_view text, const SymbolTable& symbols) {
  ExprHooks hooks;
  detail::Parser<Expr, ExprHooks> p(text, symbols, hooks);
  return p.parse_all();
}

}  // namespace schrosym
