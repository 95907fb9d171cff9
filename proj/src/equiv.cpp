#include "schrosym/equiv.hpp"

#include <stdexcept>

#include "schrosym/eval.hpp"

namespace schrosym {

namespace {

const std::array<Coord, 4> kCoords = {Coord::T, Coord::X1, Coord::X2, Coord::X3};
const std::array<const char*, 4> kNames = {"t", "x1", "x2", "x3"};

Expr X(int a) { return Expr::coord(kCoords[a]); }

bool zero(const Expr& e) { return e.is_zero() || is_zero(e) == Decision::Zero; }

Expr r_squared() { return X(1) * X(1) + X(2) * X(2) + X(3) * X(3); }

std::array<Expr, 4> old_of_new(const PointTransformation& tr) {
  return {tr.t_of_new, tr.x_of_new[0], tr.x_of_new[1], tr.x_of_new[2]};
}
std::array<Expr, 4> new_of_old(const PointTransformation& tr) {
  return {tr.new_t_of_old, tr.new_x_of_old[0], tr.new_x_of_old[1], tr.new_x_of_old[2]};
}

Expr substitute_coords(const Expr& e, const std::array<Expr, 4>& vals) {
  Bindings b;
  for (int k = 0; k < 4; ++k) b.symbols[kNames[k]] = vals[k];
  return substitute(e, b);
}

}  // namespace

Expr to_new(const PointTransformation& tr, const Expr& old_expr) {
  return substitute_coords(old_expr, old_of_new(tr));
}

Expr to_old(const PointTransformation& tr, const Expr& new_expr) {
  return substitute_coords(new_expr, new_of_old(tr));
}

void PointTransformation::verify() const {
  auto fwd = old_of_new(*this), inv = new_of_old(*this);
  for (int k = 0; k < 4; ++k) {
    if (!zero(substitute_coords(inv[k], fwd) - X(k)))
      throw std::logic_error(name + ": inverse map fails for coordinate " + kNames[k]);
    if (!zero(substitute_coords(fwd[k], inv) - X(k)))
      throw std::logic_error(name + ": forward map fails for coordinate " + kNames[k]);
  }
  Expr jac[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) jac[a][b] = diff(x_of_new[a], kCoords[b + 1]);
  Expr g[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Expr s;
      for (int c = 0; c < 3; ++c) s = s + jac[a][c] * jac[b][c];
      g[a][b] = s;
    }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      bool ok = a == b ? zero(g[a][a] - g[0][0]) : zero(g[a][b]);
      if (!ok) throw std::logic_error(name + ": spatial Jacobian is not rotation times scale");
    }
}

DiffOperator conjugate_operator(const PointTransformation& tr, const DiffOperator& q) {
  for (int a = 1; a < 4; ++a)
    if (tr.t_of_new.depends_on(kCoords[a])) throw std::invalid_argument("time map must depend on time only");
  // Forward Jacobian [[T', 0], [X_t, B]] with B = s * rotation, inverted blockwise.
  Expr tdot = diff(tr.t_of_new, Coord::T);
  if (zero(tdot)) throw std::invalid_argument("singular time map");
  Expr inv_tdot = reciprocal(tdot);
  Expr B[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) B[a][b] = diff(tr.x_of_new[a], kCoords[b + 1]);
  Expr s2;
  for (int c = 0; c < 3; ++c) s2 = s2 + B[0][c] * B[0][c];
  if (zero(s2)) throw std::invalid_argument("singular spatial map");
  Expr inv_s2 = reciprocal(s2);
  // d/dx_a = sum_b (B^-1)_{ba} d/dx~_b with B^-1 = B^T / s^2.
  // d/dt = (1/T') (d/dt~ - sum_b (B^-1 X_t)_b d/dx~_b).
  std::array<DiffOperator, 4> E;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (!B[a][b].is_zero()) E[a + 1] = E[a + 1] + DiffOperator::partial(kCoords[b + 1], B[a][b] * inv_s2);
  E[0] = DiffOperator::partial(Coord::T, inv_tdot);
  for (int b = 0; b < 3; ++b) {
    Expr w;
    for (int a = 0; a < 3; ++a) w = w + B[a][b] * diff(tr.x_of_new[a], Coord::T);
    if (!w.is_zero()) E[0] = E[0] + DiffOperator::partial(kCoords[b + 1], -(w * inv_s2 * inv_tdot));
  }
  // M^-1 E M = E + E(ln M).
  for (auto& e : E) e = e + DiffOperator::multiplication(apply(e, tr.log_multiplier));
  DiffOperator out;
  for (const auto& [m, c] : q.coefficients()) {
    DiffOperator term = DiffOperator::multiplication(to_new(tr, c));
    for (int mu = 0; mu < 4; ++mu)
      for (int k = 0; k < m[mu]; ++k) term = compose(term, E[mu]);
    out = out + term;
  }
  return out;
}

TransformedOperator transform_schrodinger(const PointTransformation& tr, const DiffOperator& L) {
  DiffOperator c = conjugate_operator(tr, L);
  Expr dt = c.coefficient(Coord::T);
  if (zero(dt)) throw std::invalid_argument("transformed operator has no time derivative");
  TransformedOperator out;
  out.factor = dt * Expr(Complex(0, -1));
  Expr inv = reciprocal(out.factor);
  out.normalized = c.map_coefficients([&](const Expr& x) { return x * inv; });
  return out;
}

Potential potential_from_operator(const DiffOperator& op, const Expr& e) {
  const Expr i = Expr::imag();
  for (const auto& [m, c] : op.coefficients()) {
    int ord = total_order(m);
    bool ok = true;
    if (m[0] > 0) {
      ok = ord == 1 ? zero(c - i) : zero(c);
    } else if (ord == 2) {
      bool pure = m[1] == 2 || m[2] == 2 || m[3] == 2;
      ok = pure ? zero(c - Expr(Rational(1, 2))) : zero(c);
    } else if (ord > 2) {
      ok = zero(c);
    } else if (ord == 1 && m[3] == 1) {
      ok = zero(c);
    }
    if (!ok) throw std::invalid_argument("operator is not of Schrödinger form with A3 = 0");
  }
  for (Coord c : {Coord::X1, Coord::X2, Coord::X3}) {
    MultiIndex m{};
    m[static_cast<int>(c)] = 2;
    if (!zero(op.coefficient(m) - Expr(Rational(1, 2))))
      throw std::invalid_argument("operator lacks the Laplacian");
  }
  Expr A1 = i * op.coefficient(Coord::X1) * pow(e, Rational(-1));
  Expr A2 = i * op.coefficient(Coord::X2) * pow(e, Rational(-1));
  Expr div = diff(A1, Coord::X1) + diff(A2, Coord::X2);
  Expr V = -(op.multiplier() + i * e * Expr(Rational(1, 2)) * div);
  // Time dependence that cancels only after simplification is removed by evaluating at t = 0.
  Bindings at0;
  at0.symbols["t"] = Expr();
  for (Expr* f : {&A1, &A2, &V}) {
    if (!f->depends_on(Coord::T)) continue;
    if (!zero(diff(*f, Coord::T))) throw std::invalid_argument("transformed potential depends on time");
    *f = substitute(*f, at0);
  }
  return Potential::from_scalar(A1, A2, V, e);
}

Potential gauge_apply(const Potential& p, const Expr& chi) {
  if (chi.depends_on(Coord::T) || chi.depends_on(Coord::X3))
    throw std::invalid_argument("gauge function must depend on x1, x2 only");
  Expr A1 = p.A1 + diff(chi, Coord::X1), A2 = p.A2 + diff(chi, Coord::X2);
  if (p.A0) return Potential::from_A0(A1, A2, *p.A0, p.e, p.g);
  Expr half_e2 = p.e * p.e * Expr(Rational(1, 2));
  Expr V = p.V + half_e2 * (A1 * A1 + A2 * A2 - p.A1 * p.A1 - p.A2 * p.A2);
  Potential out = Potential::from_scalar(A1, A2, V, p.e);
  out.g = p.g;
  return out;
}

PointTransformation identity_transformation() {
  PointTransformation tr;
  tr.name = "identity";
  tr.t_of_new = tr.new_t_of_old = X(0);
  for (int a = 0; a < 3; ++a) tr.x_of_new[a] = tr.new_x_of_old[a] = X(a + 1);
  return tr;
}

PointTransformation gauge_conjugation(const Expr& chi, const Expr& e) {
  PointTransformation tr = identity_transformation();
  tr.name = "gauge";
  tr.log_multiplier = Expr(Complex(0, -1)) * e * chi;
  return tr;
}

PointTransformation mobius_general(const Expr& a, const Expr& b, const Expr& c, const Expr& d) {
  Expr delta = a * d - b * c;
  if (zero(delta)) throw std::invalid_argument("degenerate Möbius parameters: ad - bc = 0");
  PointTransformation tr;
  tr.name = "mobius";
  const Expr t = X(0);
  Expr den_new = a - c * t;  // equals delta/(c t_old + d)
  Expr den_old = c * t + d;
  Expr sd = sqrt(delta);
  tr.t_of_new = (d * t - b) * pow(den_new, Rational(-1));
  tr.new_t_of_old = (a * t + b) * pow(den_old, Rational(-1));
  for (int k = 0; k < 3; ++k) {
    tr.x_of_new[k] = sd * X(k + 1) * pow(den_new, Rational(-1));
    tr.new_x_of_old[k] = sd * X(k + 1) * pow(den_old, Rational(-1));
  }
  tr.log_multiplier = Expr(Rational(3, 2)) * ln(den_new * pow(delta, Rational(-1))) +
                      Expr::imag() * c * r_squared() * pow(Expr(2) * den_new, Rational(-1));
  return tr;
}

PointTransformation mobius_time(const Expr& nu, const Expr& mu, const Expr& lambda) {
  return mobius_general(nu, mu, Expr(1), lambda);
}

namespace {

PointTransformation oscillator_chart(const Expr& w) {
  if (zero(w)) throw std::invalid_argument("oscillator map needs a nonzero frequency");
  PointTransformation tr;
  const Expr t = X(0);
  tr.t_of_new = exp(Expr(2) * w * t);
  tr.new_t_of_old = ln(t) * pow(Expr(2) * w, Rational(-1));
  for (int k = 0; k < 3; ++k) {
    tr.x_of_new[k] = sqrt(Expr(2) * w) * exp(w * t) * X(k + 1);
    tr.new_x_of_old[k] = X(k + 1) * pow(Expr(2) * w * t, Rational(-1, 2));
  }
  return tr;
}

}  // namespace

PointTransformation oscillator_map(const Expr& omega) {
  PointTransformation tr = oscillator_chart(omega);
  tr.name = "oscillator";
  tr.log_multiplier =
      Expr::imag() * omega * r_squared() * Expr(Rational(1, 2)) - Expr(Rational(3, 2)) * omega * X(0);
  return tr;
}

PointTransformation oscillator_map_printed(const Expr& omega) {
  PointTransformation tr = oscillator_chart(omega);
  tr.name = "oscillator (printed multiplier)";
  tr.log_multiplier = Expr::imag() * omega * (r_squared() - Expr::imag() * X(0));
  return tr;
}

PointTransformation free_fall_map(const std::array<Expr, 3>& kappa) {
  PointTransformation tr;
  tr.name = "freefall";
  const Expr t = X(0);
  tr.t_of_new = tr.new_t_of_old = t;
  Expr kx, k2;
  for (int a = 0; a < 3; ++a) {
    Expr shift = kappa[a] * t * t * Expr(Rational(1, 2));
    tr.x_of_new[a] = X(a + 1) + shift;
    tr.new_x_of_old[a] = X(a + 1) - shift;
    kx = kx + kappa[a] * X(a + 1);
    k2 = k2 + kappa[a] * kappa[a];
  }
  // psi~ = exp(-i t k.x + (i/3) k^2 t^3) psi, so M is its reciprocal in new variables.
  Expr printed = Expr(Complex(0, -1)) * t * kx + Expr(Complex(0, 1)) * Expr(Rational(1, 3)) * k2 * t * t * t;
  tr.log_multiplier = -to_new(tr, printed);
  return tr;
}

PointTransformation parse_transformation(const std::string& spec, const Expr& e) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("transformation spec needs 'kind:args'");
  std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (kind == "gauge") return gauge_conjugation(parse_expr(rest), e);
  std::vector<Expr> args;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= rest.size(); ++k) {
    if (k < rest.size() && (rest[k] == '(' || rest[k] == '[')) ++depth;
    if (k < rest.size() && (rest[k] == ')' || rest[k] == ']')) --depth;
    if (k == rest.size() || (rest[k] == ',' && depth == 0)) {
      args.push_back(parse_expr(rest.substr(start, k - start)));
      start = k + 1;
    }
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument(kind + " expects " + std::to_string(n) + " arguments");
  };
  if (kind == "mobius") {
    need(3);
    return mobius_time(args[0], args[1], args[2]);
  }
  if (kind == "oscillator") {
    need(1);
    return oscillator_map(args[0]);
  }
  if (kind == "freefall") {
    need(3);
    return free_fall_map({args[0], args[1], args[2]});
  }
  throw std::invalid_argument("unknown transformation kind '" + kind + "'");
}

}  // namespace schrosym
