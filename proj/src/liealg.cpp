#include "schrosym/liealg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "schrosym/eval.hpp"

namespace schrosym {

namespace {

using Vec = std::vector<Expr>;

bool decided_zero(const Expr& e) { return e.is_zero() || is_zero(e) == Decision::Zero; }

/// Row reduction over parameter-valued constants. Pivots must test NonZero;
/// an Unknown candidate pivot makes the reduction undecidable.
struct Eliminator {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;  // pivot column per row
  bool undecidable = false;

  /// Reduces v against existing rows; returns true when v adds a new row.
  bool insert(Vec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Expr f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!rows[r][k].is_zero()) v[k] = v[k] - f * rows[r][k];
    }
    std::optional<std::size_t> piv;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      Decision d = is_zero(v[k]);
      if (d == Decision::NonZero) {
        piv = k;
        break;
      }
      if (d == Decision::Unknown) undecidable = true;
      v[k] = Expr();
    }
    if (!piv) return false;
    Expr inv = pow(v[*piv], Rational(-1));
    for (auto& x : v) x = x * inv;
    v[*piv] = Expr(1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Expr f = rows[r][*piv];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) rows[r][k] = rows[r][k] - f * v[k];
    }
    rows.push_back(std::move(v));
    pivots.push_back(*piv);
    return true;
  }
};

std::size_t rank_of(const std::vector<Vec>& vs) {
  Eliminator el;
  for (const auto& v : vs) el.insert(v);
  if (el.undecidable) throw std::runtime_error("rank computation hit an undecidable pivot");
  return el.rows.size();
}

/// Independent spanning set of the given vectors.
std::vector<Vec> reduce_span(const std::vector<Vec>& vs) {
  Eliminator el;
  for (const auto& v : vs) el.insert(v);
  if (el.undecidable) throw std::runtime_error("span computation hit an undecidable pivot");
  return el.rows;
}

std::string unknown_name(std::size_t k) { return "__span_c" + std::to_string(k); }

}  // namespace

SpanResult span_express(const DiffOperator& op, const std::vector<DiffOperator>& basis) {
  const std::size_t n = basis.size();
  std::set<MultiIndex> indices;
  for (const auto& [m, c] : op.coefficients()) indices.insert(m);
  for (const auto& b : basis)
    for (const auto& [m, c] : b.coefficients()) indices.insert(m);

  // Linear equations in the unknown constants, one per (multi-index, monomial).
  std::vector<Vec> aug;
  Bindings zero_all;
  for (std::size_t k = 0; k < n; ++k) zero_all.symbols[unknown_name(k)] = Expr();
  for (const auto& m : indices) {
    Expr res = -op.coefficient(m);
    for (std::size_t k = 0; k < n; ++k) res = res + Expr::param(unknown_name(k)) * basis[k].coefficient(m);
    if (res.is_zero()) continue;
    for (const auto& [key, st] : split_by_coordinate_monomials(clear_denominators(res))) {
      Vec row(n + 1);
      Expr base = substitute(st.coefficient, zero_all);
      for (std::size_t k = 0; k < n; ++k) {
        Bindings one = zero_all;
        one.symbols[unknown_name(k)] = Expr(1);
        row[k] = substitute(st.coefficient, one) - base;
      }
      row[n] = -base;
      aug.push_back(std::move(row));
    }
  }

  Eliminator el;
  for (auto& r : aug) el.insert(r);
  SpanResult out;
  for (std::size_t r = 0; r < el.rows.size(); ++r)
    if (el.pivots[r] == n) return out;  // inconsistent: 0 = nonzero
  if (el.undecidable) {
    out.status = SpanStatus::Unknown;
    return out;
  }
  out.coefficients.assign(n, Expr());
  for (std::size_t r = 0; r < el.rows.size(); ++r) out.coefficients[el.pivots[r]] = el.rows[r][n];

  DiffOperator diff = -op;
  for (std::size_t k = 0; k < n; ++k) diff = diff + out.coefficients[k] * basis[k];
  out.status = SpanStatus::InSpan;
  for (const auto& [m, c] : diff.coefficients()) {
    Decision d = is_zero(c);
    if (d == Decision::NonZero) {
      out.status = SpanStatus::NotInSpan;
      break;
    }
    if (d == Decision::Unknown) out.status = SpanStatus::Unknown;
  }
  if (out.status != SpanStatus::InSpan) out.coefficients.clear();
  return out;
}

Vec StructureConstants::bracket(const Vec& u, const Vec& v) const {
  const std::size_t n = dim();
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || i == j) continue;
      Expr f = u[i] * v[j];
      for (std::size_t m = 0; m < n; ++m)
        if (!c[i][j][m].is_zero()) out[m] = out[m] + f * c[i][j][m];
    }
  }
  return out;
}

StructureConstants StructureConstants::from_relations(
    std::vector<std::string> labels, const std::vector<std::tuple<int, int, std::vector<Expr>>>& rel) {
  StructureConstants sc;
  const std::size_t n = labels.size();
  sc.labels = std::move(labels);
  sc.c.assign(n, std::vector<Vec>(n, Vec(n)));
  for (const auto& [i, j, v] : rel) {
    if (v.size() != n) throw std::invalid_argument("relation vector has wrong length");
    sc.c[i][j] = v;
    for (std::size_t m = 0; m < n; ++m) sc.c[j][i][m] = -v[m];
  }
  return sc;
}

void StructureConstants::check_identities() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (!decided_zero(c[i][j][m] + c[j][i][m]))
          throw std::logic_error("antisymmetry fails for [" + labels[i] + "," + labels[j] + "]");
  auto unit = [n](std::size_t k) {
    Vec v(n);
    v[k] = Expr(1);
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec a = bracket(unit(i), bracket(unit(j), unit(k)));
        Vec b = bracket(unit(j), bracket(unit(k), unit(i)));
        Vec d = bracket(unit(k), bracket(unit(i), unit(j)));
        for (std::size_t m = 0; m < n; ++m)
          if (!decided_zero(a[m] + b[m] + d[m]))
            throw std::logic_error("Jacobi identity fails for (" + labels[i] + ", " + labels[j] + ", " +
                                   labels[k] + ")");
      }
}

StructureConstants StructureConstants::substitute(const Bindings& b) const {
  StructureConstants out = *this;
  for (auto& row : out.c)
    for (auto& v : row)
      for (auto& x : v) x = schrosym::substitute(x, b);
  return out;
}

std::vector<std::string> StructureConstants::parameters() const {
  std::vector<std::string> out;
  for (const auto& row : c)
    for (const auto& v : row)
      for (const auto& x : v) collect_parameters(x, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), "pi"), out.end());
  return out;
}

StructureConstants direct_sum(const StructureConstants& a, const StructureConstants& b) {
  const std::size_t na = a.dim(), n = na + b.dim();
  StructureConstants s;
  s.labels = a.labels;
  s.labels.insert(s.labels.end(), b.labels.begin(), b.labels.end());
  s.c.assign(n, std::vector<Vec>(n, Vec(n)));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t m = 0; m < na; ++m) s.c[i][j][m] = a.c[i][j][m];
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t m = 0; m < b.dim(); ++m) s.c[na + i][na + j][na + m] = b.c[i][j][m];
  return s;
}

ClosureResult close_algebra(const std::vector<DiffOperator>& gens, const std::vector<std::string>& labels,
                            std::size_t max_dim) {
  if (gens.size() != labels.size()) throw std::invalid_argument("one label per generator required");
  ClosureResult out;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    SpanResult s = span_express(gens[k], out.basis);
    if (s.status == SpanStatus::InSpan) continue;
    if (s.status == SpanStatus::Unknown) {
      out.failure = "cannot decide whether " + labels[k] + " is independent";
      return out;
    }
    out.basis.push_back(gens[k]);
    names.push_back(labels[k]);
  }

  // table[i][j] for i < j, grown as the basis grows.
  std::map<std::pair<std::size_t, std::size_t>, Vec> table;
  for (std::size_t j = 0; j < out.basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      DiffOperator cm = commutator(out.basis[i], out.basis[j]);
      SpanResult s = span_express(cm, out.basis);
      std::string what = "[" + names[i] + "," + names[j] + "]";
      if (s.status == SpanStatus::Unknown) {
        out.failure = "cannot decide whether " + what + " lies in the span";
        return out;
      }
      if (s.status == SpanStatus::NotInSpan) {
        if (out.basis.size() >= max_dim) {
          out.failure = what + " leaves the span and the dimension cap is reached";
          return out;
        }
        out.basis.push_back(cm);
        names.push_back(what);
        for (auto& [key, v] : table) v.emplace_back();
        s.coefficients.assign(out.basis.size(), Expr());
        s.coefficients.back() = Expr(1);
      }
      s.coefficients.resize(out.basis.size());
      table[{i, j}] = std::move(s.coefficients);
    }
  }

  const std::size_t n = out.basis.size();
  std::vector<std::tuple<int, int, Vec>> rel;
  for (auto& [key, v] : table) {
    v.resize(n);
    rel.emplace_back(static_cast<int>(key.first), static_cast<int>(key.second), v);
  }
  out.constants = StructureConstants::from_relations(names, rel);
  out.constants.check_identities();
  out.closed = true;
  return out;
}

bool Fingerprint::operator==(const Fingerprint& o) const {
  return dim == o.dim && solvable == o.solvable && nilpotent == o.nilpotent &&
         derived_series == o.derived_series && lower_central == o.lower_central && center_dim == o.center_dim &&
         killing_rank == o.killing_rank;
}

std::string Fingerprint::to_string() const {
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  };
  std::ostringstream os;
  os << "dim=" << dim << " solvable=" << solvable << " nilpotent=" << nilpotent
     << " derived=" << list(derived_series) << " lcs=" << list(lower_central) << " center=" << center_dim
     << " killing_rank=" << killing_rank;
  return os.str();
}

Fingerprint fingerprint(const StructureConstants& sc) {
  const std::size_t n = sc.dim();
  Fingerprint fp;
  fp.dim = n;
  std::vector<Vec> full;
  for (std::size_t k = 0; k < n; ++k) {
    Vec v(n);
    v[k] = Expr(1);
    full.push_back(v);
  }

  std::vector<Vec> cur = full;
  fp.derived_series.push_back(n);
  while (!cur.empty()) {
    std::vector<Vec> next;
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) next.push_back(sc.bracket(cur[a], cur[b]));
    next = reduce_span(next);
    if (next.size() == cur.size()) break;
    fp.derived_series.push_back(next.size());
    cur = std::move(next);
  }
  fp.solvable = fp.derived_series.back() == 0;

  cur = full;
  fp.lower_central.push_back(n);
  while (!cur.empty()) {
    std::vector<Vec> next;
    for (const auto& e : full)
      for (const auto& v : cur) next.push_back(sc.bracket(e, v));
    next = reduce_span(next);
    if (next.size() == cur.size()) break;
    fp.lower_central.push_back(next.size());
    cur = std::move(next);
  }
  fp.nilpotent = fp.lower_central.back() == 0;

  // Center: v with sum_i v_i c[i][j][m] = 0 for all j, m.
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) {
      Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = sc.c[i][j][m];
      cols.push_back(row);
    }
  fp.center_dim = n - rank_of(cols);

  std::vector<Vec> killing(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr s;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m)
          if (!sc.c[j][l][m].is_zero() && !sc.c[i][m][l].is_zero()) s = s + sc.c[j][l][m] * sc.c[i][m][l];
      killing[i][j] = s;
    }
  fp.killing_rank = rank_of(killing);
  return fp;
}

namespace {

struct RegistryEntry {
  std::string name;
  std::size_t dim;
  bool solvable, nilpotent;
  std::function<StructureConstants()> build;  // empty for coarse-only names
};

Vec unit_vec(std::size_t n, std::size_t k, const Expr& f = Expr(1)) {
  Vec v(n);
  v[k] = f;
  return v;
}

using Rel = std::vector<std::tuple<int, int, Vec>>;

StructureConstants abelian(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t k = 0; k < n; ++k) l.push_back("e" + std::to_string(k + 1));
  return StructureConstants::from_relations(l, {});
}

StructureConstants make(std::vector<std::string> labels, const std::function<Rel(std::size_t)>& rel) {
  std::size_t n = labels.size();
  return StructureConstants::from_relations(std::move(labels), rel(n));
}

/// Schrödinger algebra in n space dimensions: H, D, C, P_a, G_a, M_ab, I.
StructureConstants schrodinger_algebra(int nd) {
  std::vector<std::string> l = {"H", "D", "C"};
  for (int a = 1; a <= nd; ++a) l.push_back("P" + std::to_string(a));
  for (int a = 1; a <= nd; ++a) l.push_back("G" + std::to_string(a));
  std::vector<std::pair<int, int>> rot;
  for (int a = 1; a <= nd; ++a)
    for (int b = a + 1; b <= nd; ++b) {
      rot.emplace_back(a, b);
      l.push_back("M" + std::to_string(a) + std::to_string(b));
    }
  l.push_back("I");
  const std::size_t n = l.size();
  const int H = 0, D = 1, C = 2, I = static_cast<int>(n - 1);
  auto P = [](int a) { return 2 + a; };
  auto G = [nd](int a) { return 2 + nd + a; };
  auto M = [&](int a, int b) {
    return 3 + 2 * nd + static_cast<int>(std::find(rot.begin(), rot.end(), std::pair{a, b}) - rot.begin());
  };
  Rel r;
  r.emplace_back(D, H, unit_vec(n, H, Expr(-2)));
  r.emplace_back(D, C, unit_vec(n, C, Expr(2)));
  r.emplace_back(H, C, unit_vec(n, D));
  for (int a = 1; a <= nd; ++a) {
    r.emplace_back(H, G(a), unit_vec(n, P(a)));
    r.emplace_back(D, P(a), unit_vec(n, P(a), Expr(-1)));
    r.emplace_back(D, G(a), unit_vec(n, G(a)));
    r.emplace_back(C, P(a), unit_vec(n, G(a), Expr(-1)));
    r.emplace_back(P(a), G(a), unit_vec(n, I));
  }
  // [M_ab, X_c] = delta_bc X_a - delta_ac X_b for X = P, G.
  for (auto [a, b] : rot) {
    for (int c = 1; c <= nd; ++c) {
      for (int off : {0, nd}) {
        Vec v(n);
        if (b == c) v[P(a) + off] = v[P(a) + off] + Expr(1);
        if (a == c) v[P(b) + off] = v[P(b) + off] - Expr(1);
        r.emplace_back(M(a, b), P(c) + off, v);
      }
    }
  }
  // [M_ab, M_cd] = d_bc M_ad - d_ac M_bd - d_bd M_ac + d_ad M_bc.
  auto m_signed = [&](int p, int q, Vec& v, const Expr& f) {
    if (p == q) return;
    if (p < q)
      v[M(p, q)] = v[M(p, q)] + f;
    else
      v[M(q, p)] = v[M(q, p)] - f;
  };
  for (std::size_t x = 0; x < rot.size(); ++x)
    for (std::size_t y = x + 1; y < rot.size(); ++y) {
      auto [a, b] = rot[x];
      auto [c, d] = rot[y];
      Vec v(n);
      if (b == c) m_signed(a, d, v, Expr(1));
      if (a == c) m_signed(b, d, v, Expr(-1));
      if (b == d) m_signed(a, c, v, Expr(-1));
      if (a == d) m_signed(b, c, v, Expr(1));
      r.emplace_back(M(a, b), M(c, d), v);
    }
  return StructureConstants::from_relations(l, r);
}

/// Builder for the oscillator-type algebras: each block is a Heisenberg pair
/// sharing the central element I and scaled by P0.
struct OscillatorBuilder {
  std::vector<std::string> labels;
  Rel rel;
  int add(const std::string& l) {
    labels.push_back(l);
    return static_cast<int>(labels.size() - 1);
  }
};

StructureConstants oscillator_algebra(const std::vector<std::string>& spec) {
  // spec items: "B<a>:<omega>" (pair B-a, B+a), "P<a>" (pair P_a, G_a),
  // "Ph" (P-hat pair with alpha = 1), "L" (rotation of the pairs in slots 1,2).
  std::vector<std::string> labels = {"P0", "I"};
  struct Pair {
    int minus, plus;  // for Heisenberg pairs
    char kind;
    int slot;
    Expr omega;
  };
  std::vector<Pair> pairs;
  bool rot = false;
  for (const auto& s : spec) {
    if (s == "L") {
      rot = true;
      continue;
    }
    Pair p{};
    if (s[0] == 'B') {
      p.kind = 'B';
      p.slot = s[1] - '0';
      p.omega = Expr(rational_from_string(s.substr(3)));
      labels.push_back("B-" + s.substr(1, 1));
      labels.push_back("B+" + s.substr(1, 1));
    } else if (s == "Ph") {
      p.kind = 'H';
      labels.push_back("Ph1");
      labels.push_back("Ph2");
    } else {
      p.kind = 'P';
      p.slot = s[1] - '0';
      labels.push_back("P" + s.substr(1, 1));
      labels.push_back("G" + s.substr(1, 1));
    }
    p.minus = static_cast<int>(labels.size() - 2);
    p.plus = static_cast<int>(labels.size() - 1);
    pairs.push_back(p);
  }
  int L = -1;
  if (rot) {
    labels.push_back("L3");
    L = static_cast<int>(labels.size() - 1);
  }
  const std::size_t n = labels.size();
  const Expr i = Expr::imag();
  Rel r;
  auto find = [&](char kind, int slot) -> const Pair* {
    for (const auto& p : pairs)
      if (p.kind == kind && p.slot == slot) return &p;
    return nullptr;
  };
  for (const auto& p : pairs) {
    if (p.kind == 'B') {
      r.emplace_back(p.minus, p.plus, unit_vec(n, 1, Expr(2) * i * p.omega));
      r.emplace_back(0, p.plus, unit_vec(n, p.plus, i * p.omega));
      r.emplace_back(0, p.minus, unit_vec(n, p.minus, -i * p.omega));
    } else if (p.kind == 'P') {
      r.emplace_back(p.minus, p.plus, unit_vec(n, 1, i));
      r.emplace_back(0, p.plus, unit_vec(n, p.minus, i));
    } else {
      r.emplace_back(p.plus, p.minus, unit_vec(n, 1, Expr(2) * i));
    }
  }
  if (rot) {
    // [L3, X1] = i X2, [L3, X2] = -i X1 for every planar family.
    for (char kind : {'B', 'P'}) {
      const Pair* a = find(kind, 1);
      const Pair* b = find(kind, 2);
      if (!a || !b) continue;
      r.emplace_back(L, a->minus, unit_vec(n, b->minus, i));
      r.emplace_back(L, a->plus, unit_vec(n, b->plus, i));
      r.emplace_back(L, b->minus, unit_vec(n, a->minus, -i));
      r.emplace_back(L, b->plus, unit_vec(n, a->plus, -i));
    }
    for (const auto& p : pairs)
      if (p.kind == 'H') {
        r.emplace_back(L, p.minus, unit_vec(n, p.plus, i));
        r.emplace_back(L, p.plus, unit_vec(n, p.minus, -i));
      }
  }
  return StructureConstants::from_relations(labels, r);
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> reg = [] {
    std::vector<RegistryEntry> r;
    auto full = [&](std::string name, std::function<StructureConstants()> b) {
      StructureConstants sc = b();
      Fingerprint fp = fingerprint(sc);
      r.push_back({std::move(name), sc.dim(), fp.solvable, fp.nilpotent, std::move(b)});
    };
    full("n_{1,1}", [] { return abelian(1); });
    full("n_{3,1}", [] {
      return make({"e1", "e2", "e3"}, [](std::size_t n) { return Rel{{1, 2, unit_vec(n, 0)}}; });
    });
    full("n_{4,1}", [] {
      return make({"e1", "e2", "e3", "e4"},
                  [](std::size_t n) { return Rel{{1, 3, unit_vec(n, 0)}, {2, 3, unit_vec(n, 1)}}; });
    });
    full("s_{2,1}", [] { return make({"e1", "e2"}, [](std::size_t n) { return Rel{{1, 0, unit_vec(n, 0)}}; }); });
    // Family parameter fixed at a = 1/2; the invariants used here do not see it.
    full("s_{3,1}", [] {
      return make({"e1", "e2", "e3"}, [](std::size_t n) {
        return Rel{{2, 0, unit_vec(n, 0)}, {2, 1, unit_vec(n, 1, Expr(Rational(1, 2)))}};
      });
    });
    full("s_{4,6}", [] {
      return make({"e1", "e2", "e3", "e4"}, [](std::size_t n) {
        return Rel{{1, 2, unit_vec(n, 0)}, {1, 3, unit_vec(n, 1)}, {2, 3, unit_vec(n, 2, Expr(-1))}};
      });
    });
    full("s_{4,7}", [] {
      return make({"e1", "e2", "e3", "e4"}, [](std::size_t n) {
        return Rel{{1, 2, unit_vec(n, 0)}, {1, 3, unit_vec(n, 2, Expr(-1))}, {2, 3, unit_vec(n, 1)}};
      });
    });
    full("sl(2,R)", [] {
      return make({"h", "e", "f"}, [](std::size_t n) {
        return Rel{{0, 1, unit_vec(n, 1, Expr(2))}, {0, 2, unit_vec(n, 2, Expr(-2))}, {1, 2, unit_vec(n, 0)}};
      });
    });
    full("so(3)", [] {
      return make({"e1", "e2", "e3"}, [](std::size_t n) {
        return Rel{{0, 1, unit_vec(n, 2)}, {1, 2, unit_vec(n, 0)}, {2, 0, unit_vec(n, 1)}};
      });
    });
    full("schr(1,2)", [] { return schrodinger_algebra(2); });
    full("schr(1,3)", [] { return schrodinger_algebra(3); });
    full("s_{7,1}", [] { return oscillator_algebra({"Ph", "P3", "L"}); });
    full("s_{7,2}", [] { return oscillator_algebra({"Ph", "B3:1", "L"}); });
    full("s_{8,1}", [] { return oscillator_algebra({"B1:1", "B2:2", "P3"}); });
    full("s_{8,2}", [] { return oscillator_algebra({"B1:1", "B2:2", "B3:3"}); });
    full("s_{9,1}", [] { return oscillator_algebra({"P1", "P2", "B3:1", "L"}); });
    full("s_{9,2}", [] { return oscillator_algebra({"B1:1", "B2:1", "P3", "L"}); });
    full("s_{9,3}", [] { return oscillator_algebra({"B1:1", "B2:1", "B3:2", "L"}); });
    for (const auto& [name, dim] : std::vector<std::pair<std::string, std::size_t>>{
             {"s_{5,14}", 5}, {"s_{5,17}", 5}, {"s_{5,38}", 5}, {"s_{6,160}", 6}, {"s_{6,162}", 6}, {"s_{6,242}", 6}})
      r.push_back({name, dim, true, false, {}});
    return r;
  }();
  return reg;
}

const RegistryEntry* find_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t k = 0;
  while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
  return s.substr(k);
}

/// Splits "2n_{1,1}+sl(2,R)" into (multiplicity, name) summands.
std::vector<std::pair<int, std::string>> parse_label(const std::string& label) {
  std::vector<std::pair<int, std::string>> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    std::string s = trim(cur);
    cur.clear();
    if (s.empty()) throw std::invalid_argument("empty summand in algebra label");
    std::size_t k = 0;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    int mult = k ? std::stoi(s.substr(0, k)) : 1;
    out.emplace_back(mult, trim(s.substr(k)));
  };
  for (char ch : label) {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (ch == '+' && depth == 0)
      flush();
    else
      cur += ch;
  }
  flush();
  return out;
}

}  // namespace

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

std::optional<StructureConstants> registry_algebra(const std::string& name) {
  const RegistryEntry* e = find_entry(name);
  if (!e || !e->build) return std::nullopt;
  return e->build();
}

const char* verdict_name(LabelVerdict v) {
  switch (v) {
    case LabelVerdict::Match: return "match";
    case LabelVerdict::Mismatch: return "mismatch";
    case LabelVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

LabelMatch match_label(const std::string& label, const Fingerprint& fp) {
  LabelMatch out;
  std::vector<std::pair<int, std::string>> parts;
  try {
    parts = parse_label(label);
  } catch (const std::exception& ex) {
    out.note = ex.what();
    return out;
  }
  std::optional<StructureConstants> sum;
  std::size_t dim = 0;
  bool solvable = true, nilpotent = true;
  for (const auto& [mult, name] : parts) {
    const RegistryEntry* e = find_entry(name);
    if (!e) {
      out.note = "unknown algebra name " + name;
      return out;
    }
    dim += mult * e->dim;
    solvable = solvable && e->solvable;
    nilpotent = nilpotent && e->nilpotent;
    if (!e->build) {
      out.coarse = true;
      continue;
    }
    for (int k = 0; k < mult; ++k) sum = sum ? direct_sum(*sum, e->build()) : e->build();
  }
  if (out.coarse) {
    bool ok = dim == fp.dim && solvable == fp.solvable && nilpotent == fp.nilpotent;
    out.verdict = ok ? LabelVerdict::Match : LabelVerdict::Mismatch;
    std::ostringstream os;
    os << "coarse comparison: expected dim=" << dim << " solvable=" << solvable << " nilpotent=" << nilpotent;
    out.note = os.str();
    return out;
  }
  Fingerprint expected = fingerprint(*sum);
  out.verdict = expected == fp ? LabelVerdict::Match : LabelVerdict::Mismatch;
  if (out.verdict == LabelVerdict::Mismatch) out.note = "expected " + expected.to_string();
  return out;
}

AlgebraReport analyze(const StructureConstants& sc) {
  AlgebraReport rep;
  rep.generic = fingerprint(sc);
  for (const auto& p : sc.parameters()) {
    Bindings b;
    b.symbols[p] = Expr();
    // constants with p in a denominator mean the generic basis degenerates;
    // such strata need the operators re-closed at p = 0
    StructureConstants special;
    try {
      special = sc.substitute(b);
    } catch (const std::domain_error&) {
      rep.singular.push_back(p + "=0");
      continue;
    }
    Fingerprint f = fingerprint(special);
    if (!(f == rep.generic)) rep.strata.push_back({p + "=0", f});
  }
  for (const auto& e : registry()) {
    for (int extra = 0; extra <= 2; ++extra) {
      if (e.dim + extra != rep.generic.dim) continue;
      std::string name = e.name;
      if (extra == 1) name += "+n_{1,1}";
      if (extra == 2) name += "+2n_{1,1}";
      LabelMatch m = match_label(name, rep.generic);
      if (m.verdict == LabelVerdict::Match) rep.candidates.push_back(m.coarse ? name + " (coarse)" : name);
    }
  }
  const auto& ds = rep.generic.derived_series;
  if (rep.generic.dim >= 2 && ds.size() > 1 && ds[1] == 0)
    rep.candidates.push_back(std::to_string(rep.generic.dim) + "n_{1,1}");
  return rep;
}

}  // namespace schrosym
