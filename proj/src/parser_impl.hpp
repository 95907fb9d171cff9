#pragma once

// Recursive-descent parser shared by the expression and operator front ends.
// Value is the semantic type; Hooks supplies arithmetic and extra names.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schrosym/parse.hpp"

namespace schrosym::detail {

struct Token {
  enum Kind { Number, Ident, Sym, End } kind = End;
  std::string text;
  std::size_t pos = 0;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      t.kind = Token::Number;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Token::Ident;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      t.kind = Token::Sym;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

inline bool is_derivative_marker(const std::string& s) {
  if (s.size() < 2 || s[0] != 'D') return false;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '0') return false;
  return true;
}

inline std::optional<Elementary> elementary_from_name(const std::string& n) {
  if (n == "exp") return Elementary::Exp;
  if (n == "ln" || n == "log") return Elementary::Ln;
  if (n == "sin") return Elementary::Sin;
  if (n == "cos") return Elementary::Cos;
  if (n == "tan") return Elementary::Tan;
  if (n == "tanh") return Elementary::Tanh;
  if (n == "arctan" || n == "atan") return Elementary::Arctan;
  return std::nullopt;
}

template <class Value, class Hooks>
class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols, Hooks& hooks)
      : toks_(tokenize(text)), symbols_(symbols), hooks_(hooks) {}

  Value parse_all() {
    Value v = expr();
    if (peek().kind != Token::End) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return v;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Sym && peek(k).text == s;
  }
  void expect(const char* s) {
    if (!is_sym(s)) throw ParseError(std::string("expected '") + s + "'", peek().pos);
    ++pos_;
  }

  Value expr() {
    Value v;
    if (is_sym("-")) {
      ++pos_;
      v = hooks_.neg(term());
    } else {
      if (is_sym("+")) ++pos_;
      v = term();
    }
    while (is_sym("+") || is_sym("-")) {
      bool plus = peek().text == "+";
      ++pos_;
      Value r = term();
      v = plus ? hooks_.add(v, r) : hooks_.sub(v, r);
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (is_sym("*") || is_sym("/")) {
      bool mul = peek().text == "*";
      std::size_t at = peek().pos;
      ++pos_;
      Value r = unary();
      if (mul) {
        v = hooks_.mul(v, r);
      } else {
        auto d = hooks_.as_expr(r);
        if (!d) throw ParseError("division by an operator", at);
        if (d->is_zero()) throw ParseError("division by zero", at);
        v = hooks_.mul(v, hooks_.from_expr(pow(*d, Rational(-1))));
      }
    }
    return v;
  }

  Value unary() {
    if (is_sym("-")) {
      ++pos_;
      return hooks_.neg(unary());
    }
    return factor();
  }

  Rational number_token() {
    if (peek().kind != Token::Number) throw ParseError("expected number", peek().pos);
    Rational q = rational_from_string(peek().text);
    ++pos_;
    return q;
  }

  Rational rational_exponent() {
    bool paren = false;
    if (is_sym("(")) {
      paren = true;
      ++pos_;
    }
    bool neg = false;
    if (is_sym("-")) {
      neg = true;
      ++pos_;
    }
    Rational q = number_token();
    if (paren && is_sym("/")) {
      ++pos_;
      Rational d = number_token();
      if (sgn(d) == 0) throw ParseError("zero denominator in exponent", peek().pos);
      q /= d;
    }
    if (paren) expect(")");
    return neg ? Rational(-q) : q;
  }

  Value factor() {
    std::size_t at = peek().pos;
    Value b = base();
    if (is_sym("^")) {
      ++pos_;
      Rational p = rational_exponent();
      auto e = hooks_.as_expr(b);
      if (!e) {
        if (!is_integer(p) || sgn(p) <= 0) throw ParseError("operator powers must be positive integers", at);
        Value r = b;
        for (long k = 1; k < p.get_num().get_si(); ++k) r = hooks_.mul(r, b);
        return r;
      }
      try {
        return hooks_.from_expr(pow(*e, p));
      } catch (const std::domain_error& ex) {
        throw ParseError(ex.what(), at);
      }
    }
    return b;
  }

  std::vector<Expr> args() {
    expect("(");
    std::vector<Expr> out;
    if (is_sym(")")) {
      ++pos_;
      return out;
    }
    while (true) {
      std::size_t at = peek().pos;
      Value v = expr();
      auto e = hooks_.as_expr(v);
      if (!e) throw ParseError("function arguments must be expressions", at);
      out.push_back(*e);
      if (is_sym(",")) {
        ++pos_;
        continue;
      }
      expect(")");
      return out;
    }
  }

  Value base() {
    const Token& t = peek();
    if (t.kind == Token::Number) return hooks_.from_expr(Expr(number_token()));
    if (is_sym("(")) {
      ++pos_;
      Value v = expr();
      expect(")");
      return v;
    }
    if (t.kind != Token::Ident) throw ParseError("unexpected token '" + t.text + "'", t.pos);
    std::string name = t.text;
    std::size_t at = t.pos;
    ++pos_;

    if (is_derivative_marker(name) && is_sym("[")) {
      ++pos_;
      if (peek().kind != Token::Ident) throw ParseError("expected function name", peek().pos);
      std::string fn = peek().text;
      ++pos_;
      expect("]");
      if (!symbols_.is_function(fn)) throw ParseError("unknown function '" + fn + "'", at);
      std::vector<Expr> a = args();
      check_arity(fn, a.size(), at);
      std::vector<int> d(a.size(), 0);
      for (std::size_t k = 1; k < name.size(); ++k) {
        std::size_t slot = static_cast<std::size_t>(name[k] - '1');
        if (slot >= a.size()) throw ParseError("derivative slot out of range in " + name, at);
        ++d[slot];
      }
      return hooks_.from_expr(Expr::function(fn, std::move(a), std::move(d)));
    }

    if (is_sym("(")) {
      if (auto el = elementary_from_name(name)) {
        auto a = args();
        if (a.size() != 1) throw ParseError(name + " takes one argument", at);
        try {
          return hooks_.from_expr(elementary(*el, a[0]));
        } catch (const std::domain_error& ex) {
          throw ParseError(ex.what(), at);
        }
      }
      if (name == "sqrt") {
        auto a = args();
        if (a.size() != 1) throw ParseError("sqrt takes one argument", at);
        return hooks_.from_expr(sqrt(a[0]));
      }
      if (name == "diff") return hooks_.from_expr(explicit_diff(at));
      if (symbols_.is_function(name)) {
        auto a = args();
        check_arity(name, a.size(), at);
        return hooks_.from_expr(Expr::function(name, std::move(a)));
      }
      if (auto v = hooks_.call(name, *this, at)) return *v;
      throw ParseError("unknown function '" + name + "'", at);
    }

    if (auto c = coord_from_name(name)) return hooks_.from_expr(Expr::coord(*c));
    if (name == "i") return hooks_.from_expr(Expr::imag());
    if (is_coordinate_macro(name)) return hooks_.from_expr(coordinate_macro(name));
    if (symbols_.is_parameter(name)) return hooks_.from_expr(Expr::param(name));
    if (auto v = hooks_.identifier(name)) return *v;
    throw ParseError("unknown identifier '" + name + "'", at);
  }

  Expr explicit_diff(std::size_t at) {
    expect("(");
    Value v = expr();
    auto e = hooks_.as_expr(v);
    if (!e) throw ParseError("diff expects an expression", at);
    Expr r = *e;
    while (is_sym(",")) {
      ++pos_;
      if (peek().kind != Token::Ident || !coord_from_name(peek().text))
        throw ParseError("diff expects coordinate names", peek().pos);
      r = diff(r, *coord_from_name(peek().text));
      ++pos_;
    }
    expect(")");
    return r;
  }

  void check_arity(const std::string& fn, std::size_t n, std::size_t at) const {
    int arity = symbols_.functions.at(fn);
    if (arity >= 0 && static_cast<std::size_t>(arity) != n)
      throw ParseError("function '" + fn + "' expects " + std::to_string(arity) + " arguments", at);
    if (n == 0) throw ParseError("function '" + fn + "' needs at least one argument", at);
  }

 public:
  /// Used by hooks that accept call syntax with expression arguments.
  std::vector<Expr> parse_args() { return args(); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SymbolTable& symbols_;
  Hooks& hooks_;
};

}  // namespace schrosym::detail
