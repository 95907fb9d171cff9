#include "schrosym/determining.hpp"

namespace schrosym {

namespace {

Expr X(int a) { return Expr::coord(space_coord(a)); }
Expr d(const Expr& e, int a) { return diff(e, space_coord(a)); }
Expr dt(const Expr& e) { return diff(e, Coord::T); }
Expr laplacian(const Expr& e) {
  Expr r;
  for (int a = 1; a <= 3; ++a) r += diff(e, space_coord(a), 2);
  return r;
}
Expr r_squared() { return X(1) * X(1) + X(2) * X(2) + X(3) * X(3); }

std::array<Expr, 3> vector_potential(const Potential& p) { return {p.A1, p.A2, Expr()}; }

bool depends_on_space(const Expr& e) {
  return e.depends_on(Coord::X1) || e.depends_on(Coord::X2) || e.depends_on(Coord::X3);
}

Expr divergence(const std::array<Expr, 3>& v) { return d(v[0], 1) + d(v[1], 2) + d(v[2], 3); }

Expr levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return Expr();
  int perm = (b - a + 3) % 3;  // 1 for cyclic
  return perm == 1 ? Expr(1) : Expr(-1);
}

}  // namespace

const char* time_profile_name(TimeProfile p) {
  switch (p) {
    case TimeProfile::Polynomial:
      return "poly<=2";
    case TimeProfile::Exponential:
      return "exp";
    case TimeProfile::Trigonometric:
      return "trig";
    case TimeProfile::Unrestricted:
      return "unrestricted";
  }
  return "?";
}

Expr GeneratorAnsatz::alpha() const { return -dt(xi0); }

Expr GeneratorAnsatz::theta(int a, int b) const {
  if (a == b) return Expr();
  if (a > b) return -theta(b, a);
  if (a == 1 && b == 2) return theta12;
  if (a == 1 && b == 3) return theta13;
  return theta23;
}

Expr GeneratorAnsatz::xi(int a) const {
  Expr r = -alpha() / Expr(2) * X(a) + nu[a - 1];
  for (int b = 1; b <= 3; ++b) r += theta(a, b) * X(b);
  return r;
}

Expr GeneratorAnsatz::eta0() const {
  Expr r = dt(alpha()) / Expr(4) * r_squared() + K;
  for (int a = 1; a <= 3; ++a) r -= dt(nu[a - 1]) * X(a);
  return r;
}

void validate(const GeneratorAnsatz& a) {
  if (depends_on_space(a.xi0)) throw AnsatzError("xi0 must depend on t only: " + a.xi0.to_string());
  for (const Expr* th : {&a.theta12, &a.theta13, &a.theta23})
    if (!th->is_constant()) throw AnsatzError("theta must be constant: " + th->to_string());
  Expr alpha = a.alpha();
  for (int k = 0; k < 3; ++k) {
    if (depends_on_space(a.nu[k])) throw AnsatzError("nu must depend on t only: " + a.nu[k].to_string());
    if (is_zero(alpha * a.nu[k]) != Decision::Zero)
      throw AnsatzError("alpha * nu_" + std::to_string(k + 1) + " must vanish");
  }
}

DiffOperator build_generator(const GeneratorAnsatz& a) {
  validate(a);
  const Expr i = Expr::imag();
  DiffOperator q = DiffOperator::partial(Coord::T, i * a.xi0);
  Expr div;
  for (int k = 1; k <= 3; ++k) {
    Expr xk = a.xi(k);
    q = q + DiffOperator::partial(space_coord(k), i * xk);
    div += d(xk, k);
  }
  return q + DiffOperator::multiplication(i * div / Expr(2) - a.eta0());
}

GeneratorFields extract_fields(const DiffOperator& q) {
  if (q.order() > 1) throw std::invalid_argument("generator must be first order");
  const Expr i = Expr::imag();
  GeneratorFields f;
  f.xi0 = q.coefficient(Coord::T) / i;
  Expr div;
  for (int a = 1; a <= 3; ++a) {
    f.xi[a - 1] = q.coefficient(space_coord(a)) / i;
    div += d(f.xi[a - 1], a);
  }
  f.eta0 = i * div / Expr(2) - q.multiplier();
  return f;
}

std::optional<GeneratorAnsatz> ansatz_from_generator(const DiffOperator& q) {
  if (q.order() > 1) return std::nullopt;
  GeneratorFields f = extract_fields(q);
  if (depends_on_space(f.xi0)) return std::nullopt;
  GeneratorAnsatz a;
  a.xi0 = f.xi0;
  Expr alpha = a.alpha();
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y) {
      Expr sym = d(f.xi[x - 1], y) + d(f.xi[y - 1], x) + (x == y ? alpha : Expr());
      if (!sym.is_zero()) return std::nullopt;
    }
  auto theta = [&](int x, int y) { return (d(f.xi[x - 1], y) - d(f.xi[y - 1], x)) / Expr(2); };
  a.theta12 = theta(1, 2);
  a.theta13 = theta(1, 3);
  a.theta23 = theta(2, 3);
  for (const Expr* th : {&a.theta12, &a.theta13, &a.theta23})
    if (!th->is_constant()) return std::nullopt;
  for (int x = 1; x <= 3; ++x) {
    Expr nu = f.xi[x - 1] + alpha / Expr(2) * X(x);
    for (int y = 1; y <= 3; ++y) nu -= a.theta(x, y) * X(y);
    if (depends_on_space(nu)) return std::nullopt;
    a.nu[x - 1] = nu;
  }
  a.K = f.eta0 - dt(alpha) / Expr(4) * r_squared();
  for (int x = 1; x <= 3; ++x) a.K += dt(a.nu[x - 1]) * X(x);
  a.profile = TimeProfile::Unrestricted;
  return a;
}

Expr scalar_part(const Potential& p) { return p.V - p.e * p.e / Expr(2) * (p.A1 * p.A1 + p.A2 * p.A2); }

std::vector<TaggedResidual> raw_determining_residuals(const Potential& p, const DiffOperator& q) {
  GeneratorFields f = extract_fields(q);
  const Expr i = Expr::imag();
  const auto A = vector_potential(p);
  const Expr alpha = -dt(f.xi0);
  Expr div;
  for (int a = 1; a <= 3; ++a) div += d(f.xi[a - 1], a);
  std::vector<TaggedResidual> out;

  for (int a = 1; a <= 3; ++a) out.push_back({"xi0-space", a, d(f.xi0, a)});
  int comp = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) {
      Expr r = d(f.xi[b - 1], a) + d(f.xi[a - 1], b);
      if (a == b) r -= Expr(Rational(2, 3)) * div;
      out.push_back({"shear", ++comp, r});
    }
  out.push_back({"trace", 0, div + Expr(Rational(3, 2)) * alpha});

  for (int a = 1; a <= 3; ++a) {
    Expr bracket = alpha * A[a - 1];
    for (int b = 1; b <= 3; ++b) bracket += A[b - 1] * d(f.xi[a - 1], b) - f.xi[b - 1] * d(A[a - 1], b);
    Expr r = d(f.eta0, a) - (p.e * bracket - dt(f.xi[a - 1])) -
             i / Expr(2) * (laplacian(f.xi[a - 1]) + d(div, a));
    out.push_back({"first-order", a, r});
  }

  Expr W = i * p.e / Expr(2) * divergence(A) + p.V;
  Expr g = -f.eta0 + i * div / Expr(2);
  Expr r8 = dt(g) - i / Expr(2) * laplacian(g) - alpha * W;
  for (int b = 1; b <= 3; ++b) r8 += f.xi[b - 1] * d(W, b) - p.e * A[b - 1] * d(g, b);
  out.push_back({"multiplier", 0, r8});
  return out;
}

std::vector<TaggedResidual> reduced_residuals(const Potential& p, const GeneratorAnsatz& an) {
  validate(an);
  const auto A = vector_potential(p);
  const Expr alpha = an.alpha();
  std::vector<TaggedResidual> out;
  for (int a = 1; a <= 3; ++a) {
    Expr rhs = alpha / Expr(2) * A[a - 1];
    for (int b = 1; b <= 3; ++b) {
      rhs += alpha / Expr(2) * d(A[a - 1], b) * X(b) + an.theta(a, b) * A[b - 1] - an.nu[b - 1] * d(A[a - 1], b);
      for (int c = 1; c <= 3; ++c) rhs -= an.theta(b, c) * X(c) * d(A[a - 1], b);
    }
    out.push_back({"gauge", a, d(an.K, a) - p.e * rhs});
  }
  Expr gA0 = scalar_part(p);
  Expr r = -alpha * gA0 - dt(dt(alpha)) / Expr(4) * r_squared() - dt(an.K);
  for (int a = 1; a <= 3; ++a) {
    r += an.xi(a) * d(gA0, a) + dt(dt(an.nu[a - 1])) * X(a);
    r += p.e * A[a - 1] * (dt(alpha) / Expr(2) * X(a) - dt(an.nu[a - 1]));
  }
  out.push_back({"scalar", 0, r});
  return out;
}

Expr scalar_equation_as_printed(const Potential& p, const GeneratorAnsatz& an) {
  const auto A = vector_potential(p);
  const Expr alpha = an.alpha();
  Expr gA0 = scalar_part(p);
  Expr r = -alpha * gA0 - dt(dt(alpha)) / Expr(2) * r_squared() - dt(an.K);
  for (int a = 1; a <= 3; ++a) {
    r += an.xi(a) * d(gA0, a) + dt(dt(an.nu[a - 1])) * X(a);
    r += p.e * A[a - 1] * (dt(alpha) / Expr(2) * X(a) - dt(an.nu[a - 1]));
  }
  return r;
}

std::vector<TaggedResidual> algebraic_consequences(const Potential& p, const GeneratorAnsatz& an) {
  validate(an);
  const auto A = vector_potential(p);
  const Expr alpha = an.alpha();
  std::vector<TaggedResidual> out;

  // contraction operator applied to a scalar s:
  // (alpha/2) x_a s_a - theta^{dc} x_c s_d - nu^b s_b
  auto transport = [&](const Expr& s) {
    Expr r;
    for (int a = 1; a <= 3; ++a) {
      r += alpha / Expr(2) * X(a) * d(s, a) - an.nu[a - 1] * d(s, a);
      for (int c = 1; c <= 3; ++c) r -= an.theta(a, c) * X(c) * d(s, a);
    }
    return r;
  };

  Expr xdotA, xK;
  for (int a = 1; a <= 3; ++a) {
    xdotA += X(a) * A[a - 1];
    xK += X(a) * d(an.K, a);
  }
  Expr nuA;
  for (int b = 1; b <= 3; ++b) nuA += an.nu[b - 1] * A[b - 1];
  out.push_back({"radial", 0, p.e * (transport(xdotA) + nuA) - xK});

  for (int n = 1; n <= 3; ++n) {
    Expr xcrossA, nucrossA, xcrossdK;
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        Expr eps = levi_civita(n, a, b);
        if (eps.is_zero()) continue;
        xcrossA += eps * X(a) * A[b - 1];
        nucrossA += eps * an.nu[a - 1] * A[b - 1];
        xcrossdK += eps * X(a) * d(an.K, b);
      }
    out.push_back({"angular", n, p.e * (transport(xcrossA) + nucrossA) - xcrossdK});
  }
  return out;
}

namespace {

enum class TermClass { Constant, Poly, Exp, Trig, Bad };

bool linear_in_t_without_constant(const Expr& arg) {
  Expr c = dt(arg);
  if (!c.is_constant() || c.is_zero()) return false;
  return (arg - c * Expr::coord(Coord::T)).is_zero();
}

TermClass classify_term(const Term& t) {
  TermClass cls = TermClass::Constant;
  auto merge = [&](TermClass c) {
    if (cls == TermClass::Constant || cls == c) {
      cls = c;
    } else {
      cls = TermClass::Bad;
    }
  };
  for (const auto& f : t.factors) {
    const Atom& a = f.atom;
    if (!(a->coord_mask & 1u)) continue;  // t-free factor
    if (a->kind == AtomKind::Coordinate) {
      if (!is_integer(f.exponent) || f.exponent < 0 || f.exponent > 2) return TermClass::Bad;
      merge(TermClass::Poly);
    } else if (a->kind == AtomKind::Elementary && linear_in_t_without_constant(a->args[0])) {
      if (a->elem == Elementary::Exp) {
        merge(TermClass::Exp);
      } else if (a->elem == Elementary::Sin || a->elem == Elementary::Cos || a->elem == Elementary::Tan ||
                 a->elem == Elementary::Tanh) {
        merge(TermClass::Trig);
      } else {
        return TermClass::Bad;
      }
    } else {
      return TermClass::Bad;
    }
  }
  return cls;
}

}  // namespace

TimeProfile classify_time_dependence(const Expr& f) {
  if (depends_on_space(f)) return TimeProfile::Unrestricted;
  TermClass overall = TermClass::Constant;
  for (const auto& t : f.terms()) {
    TermClass c = classify_term(t);
    if (c == TermClass::Bad) return TimeProfile::Unrestricted;
    if (c == TermClass::Constant) continue;
    if (overall == TermClass::Constant) {
      overall = c;
    } else if (overall != c) {
      return TimeProfile::Unrestricted;
    }
  }
  switch (overall) {
    case TermClass::Exp:
      return TimeProfile::Exponential;
    case TermClass::Trig:
      return TimeProfile::Trigonometric;
    default:
      return TimeProfile::Polynomial;
  }
}

bool time_profile_check(const GeneratorAnsatz& a) {
  if (classify_time_dependence(a.xi0) == TimeProfile::Unrestricted) return false;
  for (const auto& n : a.nu)
    if (classify_time_dependence(n) == TimeProfile::Unrestricted) return false;
  return true;
}

}  // namespace schrosym
