#include "schrosym/diffop.hpp"

#include <sstream>

#include "parser_impl.hpp"

namespace schrosym {

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

Expr diff_multi(Expr e, const MultiIndex& m) {
  for (int k = 0; k < 4; ++k)
    if (m[k]) e = diff(e, static_cast<Coord>(k), m[k]);
  return e;
}

std::string index_string(const MultiIndex& m) {
  return std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + "," + std::to_string(m[3]);
}

std::string derivative_string(const MultiIndex& m) {
  std::string s;
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < m[k]; ++j) {
      if (!s.empty()) s += "*";
      s += std::string("d_") + coord_name(static_cast<Coord>(k));
    }
  }
  return s;
}

}  // namespace

DiffOperator DiffOperator::multiplication(const Expr& f) { return term(MultiIndex{}, f); }

DiffOperator DiffOperator::partial(Coord c, const Expr& coef) { return term(unit_index(c), coef); }

DiffOperator DiffOperator::term(const MultiIndex& m, const Expr& coef) {
  DiffOperator d;
  d.add(m, coef);
  return d;
}

void DiffOperator::add(const MultiIndex& m, const Expr& c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(m);
  if (it == coeffs_.end()) {
    coeffs_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

Expr DiffOperator::coefficient(const MultiIndex& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Expr() : it->second;
}

int DiffOperator::order() const {
  int o = 0;
  for (const auto& [m, c] : coeffs_) o = std::max(o, total_order(m));
  return o;
}

std::optional<Expr> DiffOperator::as_multiplication() const {
  if (order() > 0) return std::nullopt;
  return multiplier();
}

DiffOperator DiffOperator::operator-() const {
  return map_coefficients([](const Expr& c) { return -c; });
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator r = a;
  for (const auto& [m, c] : b.coeffs_) r.add(m, c);
  return r;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

DiffOperator operator*(const Expr& f, const DiffOperator& a) {
  return a.map_coefficients([&](const Expr& c) { return f * c; });
}

bool DiffOperator::operator==(const DiffOperator& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (auto it = coeffs_.begin(), jt = o.coeffs_.begin(); it != coeffs_.end(); ++it, ++jt)
    if (it->first != jt->first || it->second != jt->second) return false;
  return true;
}

std::string DiffOperator::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  // highest derivatives first reads most naturally
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.to_string();
    std::string piece;
    if (total_order(m) == 0) {
      piece = cs;
    } else if (cs == "1") {
      piece = derivative_string(m);
    } else if (cs == "-1") {
      piece = "-" + derivative_string(m);
    } else {
      piece = "(" + cs + ")*" + derivative_string(m);
    }
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> DiffOperator::serialize() const {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [m, c] : coeffs_) rows.emplace_back(index_string(m), c.to_string());
  return rows;
}

DiffOperator DiffOperator::deserialize(const std::vector<std::pair<std::string, std::string>>& rows,
                                       const SymbolTable& symbols) {
  DiffOperator d;
  for (const auto& [idx, coef] : rows) {
    MultiIndex m{};
    std::istringstream in(idx);
    char comma;
    if (!(in >> m[0] >> comma >> m[1] >> comma >> m[2] >> comma >> m[3]))
      throw std::invalid_argument("bad multi-index '" + idx + "'");
    for (int k : m)
      if (k < 0) throw std::invalid_argument("negative order in '" + idx + "'");
    d.add(m, parse_expr(coef, symbols));
  }
  return d;
}

Expr apply(const DiffOperator& op, const Expr& psi) {
  Expr r;
  for (const auto& [m, c] : op.coefficients()) r += c * diff_multi(psi, m);
  return r;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b, int cap) {
  if (a.order() + b.order() > cap)
    throw OrderCapError("composition of order " + std::to_string(a.order() + b.order()) + " exceeds cap " +
                        std::to_string(cap));
  DiffOperator r;
  for (const auto& [ma, ca] : a.coefficients()) {
    for (const auto& [mb, cb] : b.coefficients()) {
      // d^ma (cb d^mb) = sum over g <= ma of C(ma, g) (d^g cb) d^(ma - g + mb)
      MultiIndex g{};
      while (true) {
        long weight = 1;
        MultiIndex out{};
        for (int k = 0; k < 4; ++k) {
          weight *= binomial(ma[k], g[k]);
          out[k] = ma[k] - g[k] + mb[k];
        }
        Expr dc = diff_multi(cb, g);
        if (!dc.is_zero()) r = r + DiffOperator::term(out, Expr(weight) * ca * dc);
        int k = 0;
        while (k < 4 && g[k] == ma[k]) g[k++] = 0;
        if (k == 4) break;
        ++g[k];
      }
    }
  }
  return r;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b, int cap) {
  return compose(a, b, cap) - compose(b, a, cap);
}

void Potential::validate() const {
  for (const Expr* f : {&A1, &A2, &V})
    if (f->depends_on(Coord::T)) throw std::invalid_argument("potentials must be time independent: " + f->to_string());
  if (A0 && A0->depends_on(Coord::T)) throw std::invalid_argument("potentials must be time independent");
}

Potential Potential::from_A0(const Expr& A1, const Expr& A2, const Expr& A0, const Expr& e, const Expr& g) {
  Potential p;
  p.A1 = A1;
  p.A2 = A2;
  p.A0 = A0;
  p.e = e;
  p.g = g;
  p.V = g * A0 + Expr(Rational(1, 2)) * e * e * (A1 * A1 + A2 * A2);
  p.validate();
  return p;
}

Potential Potential::from_scalar(const Expr& A1, const Expr& A2, const Expr& V, const Expr& e) {
  Potential p;
  p.A1 = A1;
  p.A2 = A2;
  p.V = V;
  p.e = e;
  p.validate();
  return p;
}

Potential Potential::from_generators(const Expr& F, const Expr& G, const Expr& A0) {
  return from_A0(diff(F, Coord::X1) + diff(G, Coord::X2), diff(F, Coord::X2) - diff(G, Coord::X1), A0);
}

DiffOperator schrodinger_operator(const Potential& p) {
  const Expr i = Expr::imag();
  const Expr half(Rational(1, 2));
  DiffOperator L = named_generator("L_free");
  L = L + DiffOperator::partial(Coord::X1, -i * p.e * p.A1) + DiffOperator::partial(Coord::X2, -i * p.e * p.A2);
  Expr div = diff(p.A1, Coord::X1) + diff(p.A2, Coord::X2);
  L = L + DiffOperator::multiplication(-i * p.e * half * div - p.V);
  return L;
}

SymmetryCheck check_symmetry(const Potential& p, const DiffOperator& q) {
  static const GenericTestFunctions generic;
  return check_symmetry(p, q, generic);
}

SymmetryCheck check_symmetry(const Potential& p, const DiffOperator& q, const FunctionOracle& fns) {
  return check_symmetry_operator(schrodinger_operator(p), q, fns);
}

SymmetryCheck check_symmetry_operator(const DiffOperator& L, const DiffOperator& q, const FunctionOracle& fns) {
  if (q.order() > 1) throw std::invalid_argument("symmetry operators must be at most first order");
  Expr lt = L.coefficient(Coord::T);
  if (lt.is_zero()) throw std::invalid_argument("equation operator has no time derivative");
  SymmetryCheck out;
  DiffOperator c = commutator(q, L);
  out.alpha = c.coefficient(Coord::T) / lt;
  out.residual = c - out.alpha * L;
  bool unknown = false;
  for (const auto& [m, coef] : out.residual.coefficients()) {
    ZeroTest z = zero_test(coef, fns);
    if (z.decision == Decision::Zero) continue;
    if (z.decision == Decision::NonZero) out.satisfied = Decision::NonZero;
    unknown = unknown || z.decision == Decision::Unknown;
    out.failures.push_back({m, z});
  }
  if (out.satisfied != Decision::NonZero) out.satisfied = unknown ? Decision::Unknown : Decision::Zero;
  return out;
}

// ---- named generators ----

namespace {

Expr X(int a) { return Expr::coord(space_coord(a)); }

DiffOperator P(int a) { return DiffOperator::partial(space_coord(a), -Expr::imag()); }

DiffOperator M(int a, int b) {
  return compose(DiffOperator::multiplication(X(a)), P(b)) - compose(DiffOperator::multiplication(X(b)), P(a));
}

Expr r_squared() { return X(1) * X(1) + X(2) * X(2) + X(3) * X(3); }

/// x_a P_a + P_a x_a
DiffOperator symmetric_dilation() {
  DiffOperator s;
  for (int a = 1; a <= 3; ++a) {
    DiffOperator x = DiffOperator::multiplication(X(a));
    s = s + compose(x, P(a)) + compose(P(a), x);
  }
  return s;
}

int space_index(const std::string& name, std::size_t pos) {
  if (name.size() != pos + 1) return 0;
  char c = name[pos];
  return (c >= '1' && c <= '3') ? c - '0' : 0;
}

}  // namespace

int generator_arity(const std::string& name) {
  if (name == "Ap" || name == "Am") return 1;
  if ((name.rfind("Bp", 0) == 0 || name.rfind("Bm", 0) == 0) && space_index(name, 2)) return 1;
  return 0;
}

bool is_generator_name(const std::string& name) {
  static const char* plain[] = {"P0", "P1", "P2", "P3", "G1", "G2", "G3", "L1", "L2", "L3",
                                "M12", "M13", "M23", "D", "A", "I", "L_free", "dt", "d1", "d2", "d3"};
  for (const char* p : plain)
    if (name == p) return true;
  return generator_arity(name) > 0;
}

DiffOperator named_generator(const std::string& name, const std::vector<Expr>& args) {
  if (static_cast<int>(args.size()) != generator_arity(name))
    throw std::invalid_argument("generator " + name + " expects " + std::to_string(generator_arity(name)) +
                                " arguments");
  const Expr i = Expr::imag();
  const Expr t = Expr::coord(Coord::T);
  if (name == "I") return DiffOperator::identity();
  if (name == "P0") return DiffOperator::partial(Coord::T, i);
  if (name == "dt") return DiffOperator::partial(Coord::T);
  if (name.size() == 2 && name[0] == 'd' && space_index(name, 1))
    return DiffOperator::partial(space_coord(space_index(name, 1)));
  if (name.size() == 2 && name[0] == 'P' && space_index(name, 1)) return P(space_index(name, 1));
  if (name.size() == 2 && name[0] == 'G' && space_index(name, 1)) {
    int a = space_index(name, 1);
    return t * P(a) - DiffOperator::multiplication(X(a));
  }
  if (name.size() == 2 && name[0] == 'L' && space_index(name, 1)) {
    int a = space_index(name, 1);
    int b = a % 3 + 1, c = b % 3 + 1;  // L_a = x_b P_c - x_c P_b, cyclic
    return M(b, c);
  }
  if (name.size() == 3 && name[0] == 'M' && space_index(name, 1) == 0) {
    int a = name[1] - '0', b = name[2] - '0';
    if (a >= 1 && a <= 3 && b >= 1 && b <= 3 && a != b) return M(a, b);
  }
  if (name == "D") {
    DiffOperator d = Expr(2) * t * named_generator("P0");
    for (int a = 1; a <= 3; ++a) d = d - compose(DiffOperator::multiplication(X(a)), P(a));
    return d + DiffOperator::multiplication(Expr(Rational(3, 2)) * i);
  }
  if (name == "A") {
    // the sign of r^2/2 is fixed by [A, L_free] = alpha L_free
    return t * named_generator("D") - t * t * named_generator("P0") +
           DiffOperator::multiplication(Expr(Rational(1, 2)) * r_squared());
  }
  if (name == "L_free") {
    DiffOperator L = DiffOperator::partial(Coord::T, i);
    for (Coord c : kSpaceCoords) {
      MultiIndex m{};
      m[static_cast<int>(c)] = 2;
      L = L + DiffOperator::term(m, Expr(Rational(1, 2)));
    }
    return L;
  }
  if (name == "Ap" || name == "Am") {
    const Expr& w = args[0];
    Expr s = name == "Ap" ? Expr(1) : Expr(-1);
    DiffOperator inner = named_generator("P0") + DiffOperator::multiplication(w * w * r_squared()) -
                         (s * w * Expr(Rational(1, 2))) * symmetric_dilation();
    return exp(Expr(2) * s * w * t) * inner;
  }
  if (generator_arity(name) == 1) {
    const Expr& w = args[0];
    int a = space_index(name, 2);
    Expr s = name[1] == 'p' ? Expr(1) : Expr(-1);
    return exp(s * w * t) * (P(a) - DiffOperator::multiplication(s * w * X(a)));
  }
  throw std::invalid_argument("unknown generator " + name);
}

// ---- operator parser ----

namespace {

struct OperatorHooks {
  DiffOperator from_expr(Expr e) { return DiffOperator::multiplication(e); }
  std::optional<Expr> as_expr(const DiffOperator& d) { return d.as_multiplication(); }
  DiffOperator add(const DiffOperator& a, const DiffOperator& b) { return a + b; }
  DiffOperator sub(const DiffOperator& a, const DiffOperator& b) { return a - b; }
  DiffOperator mul(const DiffOperator& a, const DiffOperator& b) { return compose(a, b); }
  DiffOperator neg(const DiffOperator& a) { return -a; }
  std::optional<DiffOperator> identifier(const std::string& name) {
    if (is_generator_name(name) && generator_arity(name) == 0) return named_generator(name);
    return std::nullopt;
  }
  template <class P>
  std::optional<DiffOperator> call(const std::string& name, P& parser, std::size_t pos) {
    if (generator_arity(name) == 0) return std::nullopt;
    auto args = parser.parse_args();
    if (static_cast<int>(args.size()) != generator_arity(name))
      throw ParseError("generator " + name + " expects " + std::to_string(generator_arity(name)) + " argument", pos);
    return named_generator(name, args);
  }
};

}  // namespace

DiffOperator parse_operator(std::string_view text, const SymbolTable& symbols) {
  OperatorHooks hooks;
  detail::Parser<DiffOperator, OperatorHooks> p(text, symbols, hooks);
  return p.parse_all();
}

}  // namespace schrosym
