#include "schrosym/expr.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace schrosym {

namespace {

const char* kCoordNames[] = {"t", "x1", "x2", "x3"};

std::string rational_key(const Rational& q) { return q.get_str(); }

std::string make_mono_key(const std::vector<Factor>& fs) {
  std::string k;
  for (const auto& f : fs) {
    if (!k.empty()) k += '&';
    k += f.atom->key;
    if (f.exponent != 1) {
      k += '^';
      k += rational_key(f.exponent);
    }
  }
  return k;
}

std::shared_ptr<const ExprNode> make_node(std::vector<Term> terms) {
  auto node = std::make_shared<ExprNode>();
  std::string key = "{";
  for (const auto& t : terms) {
    if (key.size() > 1) key += " + ";
    key += t.coef.key();
    key += '*';
    key += t.mono_key;
  }
  key += '}';
  node->terms = std::move(terms);
  node->key = std::move(key);
  return node;
}

const std::shared_ptr<const ExprNode>& zero_node() {
  static const auto z = make_node({});
  return z;
}

/// Sums terms keyed by monomial; produces a canonical Expr.
class Accumulator {
 public:
  void add(const Term& t) {
    if (t.coef.is_zero()) return;
    auto it = map_.find(t.mono_key);
    if (it == map_.end()) {
      map_.emplace(t.mono_key, t);
    } else {
      it->second.coef += t.coef;
    }
  }
  void add(Term&& t) {
    if (t.coef.is_zero()) return;
    auto it = map_.find(t.mono_key);
    if (it == map_.end()) {
      std::string k = t.mono_key;
      map_.emplace(std::move(k), std::move(t));
    } else {
      it->second.coef += t.coef;
    }
  }
  void add(const Expr& e, const Complex& scale = Complex(1)) {
    for (const auto& t : e.terms()) {
      if (scale.is_one()) {
        add(t);
      } else {
        Term s = t;
        s.coef = s.coef * scale;
        add(std::move(s));
      }
    }
  }
  Expr finish() {
    std::vector<Term> terms;
    terms.reserve(map_.size());
    for (auto& [k, t] : map_) {
      if (!t.coef.is_zero()) terms.push_back(std::move(t));
    }
    map_.clear();
    if (terms.empty()) return Expr(zero_node());
    return Expr(make_node(std::move(terms)));
  }

 private:
  std::map<std::string, Term> map_;
};

Expr single_term(Term t) {
  if (t.coef.is_zero()) return Expr();
  std::vector<Term> v;
  v.push_back(std::move(t));
  return Expr(make_node(std::move(v)));
}

unsigned expr_mask(const Expr& e) {
  unsigned m = 0;
  for (const auto& t : e.terms())
    for (const auto& f : t.factors) m |= f.atom->coord_mask;
  return m;
}

Atom make_coord_atom(Coord c) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::Coordinate;
  a->coord = c;
  a->name = kCoordNames[static_cast<int>(c)];
  a->coord_mask = 1u << static_cast<int>(c);
  a->key = std::string("0") + a->name;
  return a;
}

const Atom& coord_atom(Coord c) {
  static const std::array<Atom, 4> atoms = {make_coord_atom(Coord::T), make_coord_atom(Coord::X1),
                                            make_coord_atom(Coord::X2), make_coord_atom(Coord::X3)};
  return atoms[static_cast<int>(c)];
}

Atom make_param_atom(const std::string& name) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::Parameter;
  a->name = name;
  a->key = "1" + name;
  return a;
}

Atom make_number_root_atom(const Rational& n) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::NumberRoot;
  a->number = n;
  a->key = "2" + rational_key(n);
  return a;
}

Atom make_elementary_atom(Elementary kind, const Expr& arg) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::Elementary;
  a->elem = kind;
  a->name = elementary_name(kind);
  a->args = {arg};
  a->coord_mask = expr_mask(arg);
  a->key = "3" + a->name + "(" + arg.key() + ")";
  return a;
}

Atom make_function_atom(const std::string& name, std::vector<Expr> args, std::vector<int> deriv) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::Function;
  a->name = name;
  std::string key = "4" + name + "[";
  for (std::size_t k = 0; k < deriv.size(); ++k) {
    if (k) key += ',';
    key += std::to_string(deriv[k]);
  }
  key += "](";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) key += ';';
    key += args[k].key();
    a->coord_mask |= expr_mask(args[k]);
  }
  key += ')';
  a->args = std::move(args);
  a->deriv = std::move(deriv);
  a->key = std::move(key);
  return a;
}

Atom make_poly_atom(const Expr& base) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomKind::PolyPower;
  a->args = {base};
  a->coord_mask = expr_mask(base);
  a->key = "5(" + base.key() + ")";
  return a;
}

Rational rational_pow(const Rational& q, long n) {
  if (n == 0) return Rational(1);
  if (n < 0) {
    if (sgn(q) == 0) throw std::domain_error("division by exact zero");
    return rational_pow(Rational(q.get_den(), q.get_num()), -n);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(n));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Expr pow_positive_int(const Expr& base, long n) {
  Expr result(1);
  Expr b = base;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

bool is_ln_atom(const Atom& a) {
  return a->kind == AtomKind::Elementary && a->elem == Elementary::Ln;
}

/// Brings one product coef * prod(factors) into canonical form.
Expr normalize_term(Complex coef, std::vector<Factor> fs) {
  if (coef.is_zero()) return Expr();
  std::sort(fs.begin(), fs.end(),
            [](const Factor& a, const Factor& b) { return a.atom->key < b.atom->key; });
  std::vector<Factor> merged;
  for (auto& f : fs) {
    if (!merged.empty() && merged.back().atom->key == f.atom->key) {
      merged.back().exponent += f.exponent;
    } else {
      merged.push_back(std::move(f));
    }
  }

  std::vector<Factor> out;
  Expr extra(1);
  bool has_extra = false;
  Accumulator exp_arg;
  bool has_exp = false;
  for (auto& f : merged) {
    if (sgn(f.exponent) == 0) continue;
    const Atom& a = f.atom;
    switch (a->kind) {
      case AtomKind::Elementary:
        if (a->elem == Elementary::Exp) {
          exp_arg.add(a->args[0], Complex(f.exponent));
          has_exp = true;
        } else {
          out.push_back(std::move(f));
        }
        break;
      case AtomKind::NumberRoot: {
        long n = floor_int(f.exponent);
        Rational frac = f.exponent - n;
        coef *= Complex(rational_pow(a->number, n));
        if (sgn(frac) != 0) out.push_back({a, frac});
        break;
      }
      case AtomKind::PolyPower:
        if (f.exponent >= 1) {
          long n = floor_int(f.exponent);
          Rational frac = f.exponent - n;
          extra = extra * pow_positive_int(a->args[0], n);
          has_extra = true;
          if (sgn(frac) != 0) out.push_back({a, frac});
        } else {
          out.push_back(std::move(f));
        }
        break;
      default:
        out.push_back(std::move(f));
    }
  }
  if (has_exp) {
    Expr arg = exp_arg.finish();
    Accumulator rest;
    for (const auto& t : arg.terms()) {
      if (t.coef.is_real() && t.factors.size() == 1 && t.factors[0].exponent == 1 &&
          is_ln_atom(t.factors[0].atom)) {
        extra = extra * pow(t.factors[0].atom->args[0], t.coef.re());
        has_extra = true;
      } else {
        rest.add(t);
      }
    }
    Expr r = rest.finish();
    if (!r.is_zero()) {
      Factor ef{make_elementary_atom(Elementary::Exp, r), Rational(1)};
      auto pos = std::lower_bound(out.begin(), out.end(), ef, [](const Factor& x, const Factor& y) {
        return x.atom->key < y.atom->key;
      });
      out.insert(pos, std::move(ef));
    }
  }
  Term t;
  t.coef = coef;
  t.mono_key = make_mono_key(out);
  t.factors = std::move(out);
  Expr result = single_term(std::move(t));
  if (has_extra) result = result * extra;
  return result;
}

struct Content {
  Complex coef{1};
  Expr monomial{1};
  Expr core;
};

/// b = coef * monomial * core where core has non-negative exponents and (when
/// allowed) leading coefficient 1.
Content split_content(const Expr& b, const std::function<bool(const Complex&)>& allow_coef) {
  std::map<std::string, std::pair<Atom, Rational>> mins;
  std::set<std::string> seen;
  const auto& terms = b.terms();
  for (const auto& t : terms)
    for (const auto& f : t.factors) seen.insert(f.atom->key);
  for (const auto& t : terms) {
    for (const auto& f : t.factors) {
      if (f.atom->kind == AtomKind::NumberRoot) continue;
      if (f.atom->kind == AtomKind::Elementary && f.atom->elem == Elementary::Exp) continue;
      auto it = mins.find(f.atom->key);
      if (it == mins.end()) {
        mins.emplace(f.atom->key, std::make_pair(f.atom, f.exponent));
      } else if (f.exponent < it->second.second) {
        it->second.second = f.exponent;
      }
    }
  }
  std::vector<Factor> mono;
  for (auto& [k, v] : mins) {
    Rational m = v.second;
    bool in_all = std::all_of(terms.begin(), terms.end(), [&](const Term& t) {
      return std::any_of(t.factors.begin(), t.factors.end(),
                         [&](const Factor& f) { return f.atom->key == k; });
    });
    if (!in_all && m > 0) m = 0;  // absent counts as exponent 0
    if (sgn(m) != 0) mono.push_back({v.first, m});
  }
  Content c;
  c.core = b;
  if (!mono.empty()) {
    std::vector<Factor> inv = mono;
    for (auto& f : inv) f.exponent = -f.exponent;
    c.monomial = normalize_term(Complex(1), mono);
    c.core = b * normalize_term(Complex(1), inv);
  }
  if (!c.core.is_zero()) {
    Complex lead = c.core.terms().front().coef;
    if (!lead.is_one() && allow_coef(lead)) {
      c.coef = lead;
      c.core = c.core * Expr(lead.inverse());
    }
  }
  return c;
}

Expr ln_atom_value(const Atom& a) {
  switch (a->kind) {
    case AtomKind::Elementary:
      if (a->elem == Elementary::Exp) return a->args[0];
      break;
    case AtomKind::PolyPower:
      return Expr::from_atom(make_elementary_atom(Elementary::Ln, a->args[0]));
    default:
      break;
  }
  return Expr::from_atom(make_elementary_atom(Elementary::Ln, Expr::from_atom(a)));
}

Expr ln_number(const Complex& c) {
  if (c.is_one()) return Expr();
  return Expr::from_atom(make_elementary_atom(Elementary::Ln, Expr(c)));
}

Expr ln_impl(const Expr& u) {
  if (u.is_zero()) throw std::domain_error("ln(0)");
  if (u.terms().size() == 1) {
    const Term& t = u.terms().front();
    Accumulator acc;
    acc.add(ln_number(t.coef));
    for (const auto& f : t.factors) acc.add(ln_atom_value(f.atom), Complex(f.exponent));
    return acc.finish();
  }
  Content c = split_content(u, [](const Complex&) { return true; });
  Expr result = ln_number(c.coef) + ln_impl(c.monomial);
  if (c.core.terms().size() == 1) return result + ln_impl(c.core);
  return result + Expr::from_atom(make_elementary_atom(Elementary::Ln, c.core));
}

/// Splits n into prime powers so that radicals of perfect powers collapse.
void push_prime_roots(mpz_class n, const Rational& p, std::vector<Factor>& fs) {
  if (n == 1) return;
  for (unsigned long d = 2; d < 100000 && mpz_class(d) * d <= n; ++d) {
    long k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) fs.push_back({make_number_root_atom(Rational(mpz_class(d))), p * k});
  }
  if (n != 1) fs.push_back({make_number_root_atom(Rational(n)), p});
}

Expr pow_single(const Term& t, const Rational& p) {
  std::vector<Factor> fs;
  fs.reserve(t.factors.size() + 2);
  for (const auto& f : t.factors) fs.push_back({f.atom, f.exponent * p});
  Complex coef(1);
  if (is_integer(p)) {
    coef = t.coef.pow(p.get_num().get_si());
  } else if (!t.coef.is_one()) {
    if (!t.coef.is_real()) throw std::domain_error("fractional power of a complex coefficient");
    Rational q = t.coef.re();
    if (sgn(q) < 0) {
      Rational twice = 2 * p;
      if (!is_integer(twice)) throw std::domain_error("fractional power of a negative number");
      coef = Complex::i().pow(twice.get_num().get_si());
      q = -q;
    }
    push_prime_roots(q.get_num(), p, fs);
    push_prime_roots(q.get_den(), -p, fs);
  }
  return normalize_term(coef, std::move(fs));
}

using AtomMap = std::function<Expr(const Atom&, const std::vector<Expr>&)>;

/// Rebuilds e bottom-up, passing each atom (with rebuilt arguments) through fn.
Expr rebuild(const Expr& e, const AtomMap& fn, std::unordered_map<std::string, Expr>& memo) {
  Accumulator acc;
  for (const auto& t : e.terms()) {
    Expr prod(t.coef);
    for (const auto& f : t.factors) {
      auto it = memo.find(f.atom->key);
      Expr value;
      if (it != memo.end()) {
        value = it->second;
      } else {
        std::vector<Expr> args;
        args.reserve(f.atom->args.size());
        for (const auto& a : f.atom->args) args.push_back(rebuild(a, fn, memo));
        value = fn(f.atom, args);
        memo.emplace(f.atom->key, value);
      }
      prod = prod * pow(value, f.exponent);
    }
    acc.add(prod);
  }
  return acc.finish();
}

Expr default_atom_value(const Atom& a, const std::vector<Expr>& args) {
  switch (a->kind) {
    case AtomKind::Coordinate:
      return Expr::coord(a->coord);
    case AtomKind::Parameter:
      return Expr::param(a->name);
    case AtomKind::NumberRoot:
      return Expr(a->number);
    case AtomKind::Elementary:
      return elementary(a->elem, args[0]);
    case AtomKind::Function:
      return Expr::function(a->name, args, a->deriv);
    case AtomKind::PolyPower:
      return args[0];
  }
  return Expr();
}

Expr diff_atom(const Atom& a, Coord v);

}  // namespace

const char* coord_name(Coord c) { return kCoordNames[static_cast<int>(c)]; }

std::optional<Coord> coord_from_name(const std::string& name) {
  for (Coord c : kAllCoords)
    if (name == kCoordNames[static_cast<int>(c)]) return c;
  return std::nullopt;
}

const char* elementary_name(Elementary e) {
  switch (e) {
    case Elementary::Exp: return "exp";
    case Elementary::Ln: return "ln";
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Tan: return "tan";
    case Elementary::Tanh: return "tanh";
    case Elementary::Arctan: return "arctan";
  }
  return "?";
}

Expr::Expr() : node_(zero_node()) {}
Expr::Expr(long v) : Expr(Complex(v)) {}
Expr::Expr(const Rational& q) : Expr(Complex(q)) {}
Expr::Expr(const Complex& c) {
  if (c.is_zero()) {
    node_ = zero_node();
  } else {
    Term t;
    t.coef = c;
    node_ = make_node({t});
  }
}

Expr Expr::coord(Coord c) { return from_atom(coord_atom(c)); }

Expr Expr::param(const std::string& name) { return from_atom(make_param_atom(name)); }

Expr Expr::function(const std::string& name, std::vector<Expr> args, std::vector<int> deriv) {
  if (deriv.empty()) deriv.assign(args.size(), 0);
  if (deriv.size() != args.size()) throw ArityError("derivative multi-index does not match arity of " + name);
  return from_atom(make_function_atom(name, std::move(args), std::move(deriv)));
}

Expr Expr::from_atom(const Atom& a, const Rational& exponent) {
  return normalize_term(Complex(1), {Factor{a, exponent}});
}

std::optional<Complex> Expr::as_number() const {
  if (is_zero()) return Complex(0);
  if (terms().size() == 1 && terms().front().factors.empty()) return terms().front().coef;
  return std::nullopt;
}

bool Expr::is_constant() const { return expr_mask(*this) == 0; }

bool Expr::depends_on(Coord c) const { return (expr_mask(*this) >> static_cast<int>(c)) & 1u; }

Expr Expr::operator-() const {
  Accumulator acc;
  acc.add(*this, Complex(-1));
  return acc.finish();
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Accumulator acc;
  acc.add(a);
  acc.add(b);
  return acc.finish();
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  Accumulator acc;
  acc.add(a);
  acc.add(b, Complex(-1));
  return acc.finish();
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (auto n = a.as_number(); n && n->is_one()) return b;
  if (auto n = b.as_number(); n && n->is_one()) return a;
  Accumulator acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      std::vector<Factor> fs;
      fs.reserve(ta.factors.size() + tb.factors.size());
      fs.insert(fs.end(), ta.factors.begin(), ta.factors.end());
      fs.insert(fs.end(), tb.factors.begin(), tb.factors.end());
      acc.add(normalize_term(ta.coef * tb.coef, std::move(fs)));
    }
  }
  return acc.finish();
}

Expr operator/(const Expr& a, const Expr& b) { return a * pow(b, Rational(-1)); }

Expr pow(const Expr& base, const Rational& p) {
  if (sgn(p) == 0) return Expr(1);
  if (base.is_zero()) {
    if (sgn(p) > 0) return Expr();
    throw std::domain_error("division by exact zero");
  }
  if (base.terms().size() == 1) return pow_single(base.terms().front(), p);
  if (is_integer(p) && sgn(p) > 0) return pow_positive_int(base, p.get_num().get_si());
  Content c = split_content(base, [&](const Complex& lead) {
    if (is_integer(p)) return true;
    if (!lead.is_real()) return false;
    if (sgn(lead.re()) > 0) return true;
    return is_integer(Rational(2 * p));
  });
  Expr result = pow(Expr(c.coef), p) * pow(c.monomial, p);
  if (c.core.terms().size() == 1) return result * pow(c.core, p);
  return result * Expr::from_atom(make_poly_atom(c.core), p);
}

Expr elementary(Elementary kind, const Expr& arg) {
  switch (kind) {
    case Elementary::Exp:
      return normalize_term(Complex(1), {Factor{make_elementary_atom(Elementary::Exp, arg), Rational(1)}});
    case Elementary::Ln:
      return ln_impl(arg);
    case Elementary::Cos:
      if (arg.is_zero()) return Expr(1);
      break;
    default:
      if (arg.is_zero()) return Expr();
  }
  return Expr::from_atom(make_elementary_atom(kind, arg));
}

namespace {

Expr diff_atom(const Atom& a, Coord v) {
  if (!((a->coord_mask >> static_cast<int>(v)) & 1u)) return Expr();
  switch (a->kind) {
    case AtomKind::Coordinate:
      return Expr(1);
    case AtomKind::Parameter:
    case AtomKind::NumberRoot:
      return Expr();
    case AtomKind::PolyPower:
      return diff(a->args[0], v);
    case AtomKind::Elementary: {
      const Expr& u = a->args[0];
      Expr du = diff(u, v);
      if (du.is_zero()) return du;
      switch (a->elem) {
        case Elementary::Exp: return Expr::from_atom(a) * du;
        case Elementary::Ln: return du * pow(u, Rational(-1));
        case Elementary::Sin: return cos(u) * du;
        case Elementary::Cos: return -(sin(u) * du);
        case Elementary::Tan: {
          Expr tu = Expr::from_atom(a);
          return (Expr(1) + tu * tu) * du;
        }
        case Elementary::Tanh: {
          Expr tu = Expr::from_atom(a);
          return (Expr(1) - tu * tu) * du;
        }
        case Elementary::Arctan: return du * pow(Expr(1) + u * u, Rational(-1));
      }
      return Expr();
    }
    case AtomKind::Function: {
      Accumulator acc;
      for (std::size_t k = 0; k < a->args.size(); ++k) {
        Expr dk = diff(a->args[k], v);
        if (dk.is_zero()) continue;
        std::vector<int> d = a->deriv;
        ++d[k];
        acc.add(Expr::function(a->name, a->args, std::move(d)) * dk);
      }
      return acc.finish();
    }
  }
  return Expr();
}

}  // namespace

Expr diff(const Expr& e, Coord v) {
  std::unordered_map<std::string, Expr> memo;
  Accumulator acc;
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      const Factor& f = t.factors[i];
      if (!((f.atom->coord_mask >> static_cast<int>(v)) & 1u)) continue;
      Expr da;
      if (auto it = memo.find(f.atom->key); it != memo.end()) {
        da = it->second;
      } else {
        da = diff_atom(f.atom, v);
        memo.emplace(f.atom->key, da);
      }
      if (da.is_zero()) continue;
      std::vector<Factor> rest;
      rest.reserve(t.factors.size());
      for (std::size_t j = 0; j < t.factors.size(); ++j)
        if (j != i) rest.push_back(t.factors[j]);
      rest.push_back({f.atom, f.exponent - 1});
      acc.add(normalize_term(t.coef * Complex(f.exponent), std::move(rest)) * da);
    }
  }
  return acc.finish();
}

Expr diff(const Expr& e, Coord var, int times) {
  Expr r = e;
  for (int k = 0; k < times && !r.is_zero(); ++k) r = diff(r, var);
  return r;
}

Expr canonicalize(const Expr& e) {
  std::unordered_map<std::string, Expr> memo;
  return rebuild(e, default_atom_value, memo);
}

Expr trig_to_exp(const Expr& e) {
  std::unordered_map<std::string, Expr> memo;
  const Expr I = Expr::imag();
  return rebuild(
      e,
      [&](const Atom& a, const std::vector<Expr>& args) -> Expr {
        if (a->kind != AtomKind::Elementary) return default_atom_value(a, args);
        const Expr& u = args[0];
        switch (a->elem) {
          case Elementary::Sin:
            return (exp(I * u) - exp(-(I * u))) * Expr(Complex(Rational(0), Rational(-1, 2)));
          case Elementary::Cos:
            return (exp(I * u) + exp(-(I * u))) * Expr(Rational(1, 2));
          case Elementary::Tan:
            return (exp(I * u) - exp(-(I * u))) * pow(exp(I * u) + exp(-(I * u)), Rational(-1)) *
                   Expr(Complex(Rational(0), Rational(-1)));
          case Elementary::Tanh:
            return (exp(u) - exp(-u)) * pow(exp(u) + exp(-u), Rational(-1));
          default:
            return default_atom_value(a, args);
        }
      },
      memo);
}

Expr substitute(const Expr& e, const Bindings& b) {
  std::unordered_map<std::string, Expr> memo;
  return rebuild(
      e,
      [&](const Atom& a, const std::vector<Expr>& args) -> Expr {
        if (a->kind == AtomKind::Coordinate || a->kind == AtomKind::Parameter) {
          auto it = b.symbols.find(a->name);
          if (it != b.symbols.end()) return it->second;
        }
        if (a->kind == AtomKind::Function) {
          auto it = b.functions.find(a->name);
          if (it != b.functions.end()) {
            const FunctionBinding& fb = it->second;
            if (fb.slots.size() != args.size())
              throw ArityError("function " + a->name + " bound with arity " + std::to_string(fb.slots.size()) +
                               " but applied to " + std::to_string(args.size()) + " arguments");
            Expr body = fb.body;
            for (std::size_t k = 0; k < args.size(); ++k) body = diff(body, fb.slots[k], a->deriv[k]);
            Bindings slot;
            for (std::size_t k = 0; k < args.size(); ++k) slot.symbols[coord_name(fb.slots[k])] = args[k];
            return substitute(body, slot);
          }
        }
        return default_atom_value(a, args);
      },
      memo);
}

std::map<std::string, SplitTerm> split_by_coordinate_monomials(const Expr& e) {
  std::map<std::string, std::pair<std::vector<Factor>, Accumulator>> groups;
  for (const auto& t : e.terms()) {
    std::vector<Factor> dep, cst;
    for (const auto& f : t.factors) (f.atom->coord_mask ? dep : cst).push_back(f);
    std::string k = make_mono_key(dep);
    auto& g = groups[k];
    g.first = dep;
    Term c;
    c.coef = t.coef;
    c.mono_key = make_mono_key(cst);
    c.factors = std::move(cst);
    g.second.add(std::move(c));
  }
  std::map<std::string, SplitTerm> out;
  for (auto& [k, g] : groups) {
    Expr coeff = g.second.finish();
    if (coeff.is_zero()) continue;
    Term m;
    m.coef = Complex(1);
    m.mono_key = k;
    m.factors = g.first;
    out.emplace(k, SplitTerm{single_term(std::move(m)), coeff});
  }
  return out;
}

Expr clear_denominators(const Expr& e) {
  Expr cur = e;
  for (int iter = 0; iter < 32; ++iter) {
    std::map<std::string, std::pair<Atom, long>> need;
    for (const auto& t : cur.terms()) {
      for (const auto& f : t.factors) {
        if (sgn(f.exponent) >= 0) continue;
        long n = -floor_int(f.exponent);
        auto it = need.find(f.atom->key);
        if (it == need.end())
          need.emplace(f.atom->key, std::make_pair(f.atom, n));
        else
          it->second.second = std::max(it->second.second, n);
      }
    }
    if (need.empty()) return cur;
    // exponents are merged per term before normalization so that B^-n * B^n
    // cancels instead of meeting an already expanded B^n
    Accumulator acc;
    for (const auto& t : cur.terms()) {
      std::vector<Factor> fs = t.factors;
      for (auto& [k, v] : need) fs.push_back({v.first, Rational(v.second)});
      acc.add(normalize_term(t.coef, std::move(fs)));
    }
    cur = acc.finish();
  }
  return cur;
}

Expr reciprocal(const Expr& e) {
  if (e.terms().size() <= 1) return pow(e, Rational(-1));
  Expr cur = e;
  std::vector<Factor> den;
  for (int iter = 0; iter < 32; ++iter) {
    std::map<std::string, std::pair<Atom, long>> need;
    for (const auto& t : cur.terms())
      for (const auto& f : t.factors) {
        if (sgn(f.exponent) >= 0) continue;
        long n = -floor_int(f.exponent);
        auto [it, fresh] = need.emplace(f.atom->key, std::make_pair(f.atom, n));
        if (!fresh) it->second.second = std::max(it->second.second, n);
      }
    if (need.empty()) break;
    Accumulator acc;
    for (const auto& t : cur.terms()) {
      std::vector<Factor> fs = t.factors;
      for (auto& [k, v] : need) fs.push_back({v.first, Rational(v.second)});
      acc.add(normalize_term(t.coef, std::move(fs)));
    }
    for (auto& [k, v] : need) den.push_back({v.first, Rational(v.second)});
    cur = acc.finish();
  }
  return pow(cur, Rational(-1)) * normalize_term(Complex(1), std::move(den));
}

namespace {
void walk_atoms(const Expr& e, const std::function<void(const Atom&)>& fn) {
  for (const auto& t : e.terms()) {
    for (const auto& f : t.factors) {
      fn(f.atom);
      for (const auto& a : f.atom->args) walk_atoms(a, fn);
    }
  }
}
}  // namespace

void collect_parameters(const Expr& e, std::vector<std::string>& out) {
  walk_atoms(e, [&](const Atom& a) {
    if (a->kind == AtomKind::Parameter && std::find(out.begin(), out.end(), a->name) == out.end())
      out.push_back(a->name);
  });
}

void collect_functions(const Expr& e, std::vector<std::string>& out) {
  walk_atoms(e, [&](const Atom& a) {
    if (a->kind == AtomKind::Function && std::find(out.begin(), out.end(), a->name) == out.end())
      out.push_back(a->name);
  });
}

void collect_function_arities(const Expr& e, std::map<std::string, std::size_t>& out) {
  walk_atoms(e, [&](const Atom& a) {
    if (a->kind != AtomKind::Function) return;
    auto [it, fresh] = out.emplace(a->name, a->args.size());
    if (!fresh && it->second != a->args.size())
      throw ArityError("function " + a->name + " applied with " + std::to_string(it->second) + " and " +
                       std::to_string(a->args.size()) + " arguments");
  });
}

namespace {

std::string exponent_string(const Rational& q) {
  if (is_integer(q) && sgn(q) > 0) return q.get_str();
  return "(" + q.get_str() + ")";
}

std::string atom_string(const Atom& a) {
  switch (a->kind) {
    case AtomKind::Coordinate:
    case AtomKind::Parameter:
      return a->name;
    case AtomKind::NumberRoot:
      return a->number.get_str();
    case AtomKind::Elementary:
      return a->name + "(" + a->args[0].to_string() + ")";
    case AtomKind::Function: {
      std::string s;
      bool plain = std::all_of(a->deriv.begin(), a->deriv.end(), [](int d) { return d == 0; });
      if (plain) {
        s = a->name;
      } else {
        s = "D";
        for (std::size_t k = 0; k < a->deriv.size(); ++k)
          for (int j = 0; j < a->deriv[k]; ++j) s += std::to_string(k + 1);
        s += "[" + a->name + "]";
      }
      s += "(";
      for (std::size_t k = 0; k < a->args.size(); ++k) {
        if (k) s += ", ";
        s += a->args[k].to_string();
      }
      return s + ")";
    }
    case AtomKind::PolyPower:
      return "(" + a->args[0].to_string() + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& t : terms()) {
    std::string fs;
    for (const auto& f : t.factors) {
      if (!fs.empty()) fs += '*';
      fs += atom_string(f.atom);
      if (f.exponent != 1) fs += "^" + exponent_string(f.exponent);
    }
    std::string s;
    if (fs.empty())
      s = t.coef.to_string();
    else if (t.coef.is_one())
      s = fs;
    else if (t.coef == Complex(-1))
      s = "-" + fs;
    else
      s = t.coef.to_string() + "*" + fs;
    if (out.empty())
      out = s;
    else if (s[0] == '-')
      out += " - " + s.substr(1);
    else
      out += " + " + s;
  }
  return out;
}

}  // namespace schrosym
