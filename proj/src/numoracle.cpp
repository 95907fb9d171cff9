#include "schrosym/numoracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <json.hpp>
#include <sstream>

namespace schrosym {

namespace {

using json = nlohmann::json;
using lcplx = std::complex<long double>;
// Nested stencils amplify rounding by about h^-3, so values carry extended precision.
using Field = std::function<lcplx(const GridPoint&)>;

struct Stencil {
  std::vector<int> offsets;
  std::vector<int> weights;
  int denominator;
};

const Stencil& stencil(int order, int deriv) {
  static const Stencil d1o2{{-1, 1}, {-1, 1}, 2};
  static const Stencil d2o2{{-1, 0, 1}, {1, -2, 1}, 1};
  static const Stencil d1o4{{-2, -1, 1, 2}, {1, -8, 8, -1}, 12};
  static const Stencil d2o4{{-2, -1, 0, 1, 2}, {-1, 16, -30, 16, -1}, 12};
  if (deriv == 1) return order == 2 ? d1o2 : d1o4;
  if (deriv == 2) return order == 2 ? d2o2 : d2o4;
  throw OracleError("finite differences support derivative orders 1 and 2 per axis, got " + std::to_string(deriv));
}

/// Nested 1D stencils, one axis at a time.
lcplx fd_derivative(const Field& f, const GridPoint& p, MultiIndex m, const std::array<double, 4>& step, int order) {
  int axis = -1;
  for (int a = 0; a < 4; ++a)
    if (m[a] > 0) {
      axis = a;
      break;
    }
  if (axis < 0) return f(p);
  const int n = m[axis];
  m[axis] = 0;
  const Stencil& s = stencil(order, n);
  lcplx acc = 0;
  for (std::size_t k = 0; k < s.offsets.size(); ++k) {
    GridPoint q = p;
    q[axis] += s.offsets[k] * step[axis];
    acc += static_cast<long double>(s.weights[k]) * fd_derivative(f, q, m, step, order);
  }
  return acc / (s.denominator * std::pow(static_cast<long double>(step[axis]), n));
}

/// An operator with its coefficients ready for numeric evaluation.
struct NumericOperator {
  std::vector<std::pair<MultiIndex, Expr>> terms;
};

NumericOperator numeric(const DiffOperator& op) {
  NumericOperator n;
  for (const auto& [m, c] : op.coefficients()) n.terms.emplace_back(m, c);
  return n;
}

struct Context {
  std::map<std::string, cplx> params;
  const FunctionOracle* fns = nullptr;
  std::array<double, 4> step{};
  int order = 4;

  cplx eval(const Expr& e, const GridPoint& p) const {
    NumericPoint np;
    for (int k = 0; k < 4; ++k) np.coords[k] = p[k];
    np.params = params;
    cplx v = eval_numeric(e, np, *fns);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw SingularityError("non-finite value");
    return v;
  }

  lcplx apply(const NumericOperator& op, const Field& f, const GridPoint& p) const {
    lcplx acc = 0;
    for (const auto& [m, c] : op.terms) acc += lcplx(eval(c, p)) * fd_derivative(f, p, m, step, order);
    return acc;
  }
};

void collect(const DiffOperator& op, std::vector<std::string>& out) {
  for (const auto& [m, c] : op.coefficients()) collect_parameters(c, out);
}

std::string point_string(const GridPoint& p) {
  std::ostringstream os;
  os << "(t=" << p[0] << ", x1=" << p[1] << ", x2=" << p[2] << ", x3=" << p[3] << ")";
  return os.str();
}

int stencil_reach(int order) { return order == 2 ? 1 : 2; }

}  // namespace

void GridSpec::validate() const {
  if (!(h > 0) || !(tau > 0)) throw OracleError("grid spacings must be positive");
  if (order != 2 && order != 4) throw OracleError("stencil order must be 2 or 4");
  if (points < 1 || time_points < 1) throw OracleError("grid needs at least one sample per axis");
  for (int a = 0; a < 3; ++a)
    if (!(hi[a] >= lo[a])) throw OracleError("grid extent is empty along x" + std::to_string(a + 1));
  if (!(t_hi >= t_lo)) throw OracleError("grid time extent is empty");
  const double reach = 2 * stencil_reach(order) * std::max(h, tau);
  if (margin < reach)
    throw OracleError("singularity margin " + std::to_string(margin) + " is below the nested stencil reach " +
                      std::to_string(reach));
}

std::vector<GridPoint> GridSpec::samples() const {
  auto axis = [](double a, double b, int n) {
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(n == 1 ? (a + b) / 2 : a + (b - a) * k / (n - 1));
    return v;
  };
  std::vector<GridPoint> out;
  for (double t : axis(t_lo, t_hi, time_points))
    for (double x1 : axis(lo[0], hi[0], points))
      for (double x2 : axis(lo[1], hi[1], points))
        for (double x3 : axis(lo[2], hi[2], points))
          out.push_back({t + shift[0], x1 + shift[1], x2 + shift[2], x3 + shift[3]});
  return out;
}

namespace {

template <class R>
std::complex<R> wavefunction_value(const TestWavefunction& w, const GridPoint& p) {
  auto num = [](const Rational& q) {
    return static_cast<R>(q.get_num().get_d()) / static_cast<R>(q.get_den().get_d());
  };
  const R t = p[0];
  R gauss = 0, wave = -num(w.omega) * t, re = 1 + num(w.c) * t, im = 0;
  for (int a = 0; a < 3; ++a) {
    const R x = p[a + 1], dx = x - num(w.center[a]);
    gauss += dx * dx;
    wave += num(w.k[a]) * x;
    re += num(w.b[a]) * x;
    im += num(w.d[a]) * x;
  }
  const R s = num(w.sigma);
  return std::complex<R>(re, im) * std::exp(std::complex<R>(-gauss / (2 * s * s), wave));
}

}  // namespace

cplx TestWavefunction::value(const GridPoint& p) const { return wavefunction_value<double>(*this, p); }

std::complex<long double> TestWavefunction::extended_value(const GridPoint& p) const {
  return wavefunction_value<long double>(*this, p);
}

Expr TestWavefunction::expr() const {
  const Expr t = Expr::coord(Coord::T), i = Expr::imag();
  Expr gauss, wave = -Expr(omega) * t, pre = Expr(1) + Expr(c) * t;
  for (int a = 0; a < 3; ++a) {
    const Expr x = Expr::coord(space_coord(a + 1)), dx = x - Expr(center[a]);
    gauss = gauss + dx * dx;
    wave = wave + Expr(k[a]) * x;
    pre = pre + Expr(b[a]) * x + i * Expr(d[a]) * x;
  }
  return pre * exp(-gauss / Expr(2 * sigma * sigma) + i * wave);
}

TestWavefunction TestWavefunction::variant(int n) {
  TestWavefunction w;
  switch (n % 3) {
    case 0:
      break;
    case 1:
      w.sigma = Rational(5, 2);
      w.k = {Rational(-1, 5), Rational(2, 5), Rational(0)};
      w.omega = Rational(-1, 3);
      w.d = {Rational(0), Rational(1, 5), Rational(-1, 10)};
      break;
    case 2:
      w.center = {Rational(1), Rational(2), Rational(3, 2)};
      w.sigma = Rational(3);
      w.k = {Rational(1, 10), Rational(1, 10), Rational(-3, 10)};
      w.c = Rational(-1, 20);
      break;
  }
  return w;
}

OracleConfig parse_oracle_config(const std::string& json_text) {
  OracleConfig cfg;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw OracleError(std::string("oracle config: ") + e.what());
  }
  try {
    if (j.contains("grid")) {
      const json& g = j["grid"];
      if (g.contains("h")) cfg.grid.h = g["h"].get<double>();
      cfg.grid.tau = g.value("tau", cfg.grid.h);
      if (g.contains("order")) cfg.grid.order = g["order"].get<int>();
      if (g.contains("extent")) {
        const json& e = g["extent"];
        if (e.size() == 2 && e[0].is_number()) {
          cfg.grid.lo.fill(e[0].get<double>());
          cfg.grid.hi.fill(e[1].get<double>());
        } else if (e.size() == 3) {
          for (int a = 0; a < 3; ++a) {
            cfg.grid.lo[a] = e[a].at(0).get<double>();
            cfg.grid.hi[a] = e[a].at(1).get<double>();
          }
        } else {
          throw OracleError("oracle config: grid.extent must be [lo, hi] or three such pairs");
        }
      }
      if (g.contains("time")) {
        cfg.grid.t_lo = g["time"].at(0).get<double>();
        cfg.grid.t_hi = g["time"].at(1).get<double>();
      }
      if (g.contains("points")) cfg.grid.points = g["points"].get<int>();
      if (g.contains("time_points")) cfg.grid.time_points = g["time_points"].get<int>();
      if (g.contains("margin")) cfg.grid.margin = g["margin"].get<double>();
      if (g.contains("threads")) cfg.grid.threads = g["threads"].get<unsigned>();
    }
    if (j.contains("oracle")) {
      const json& o = j["oracle"];
      if (o.contains("tolerance")) cfg.tolerance = o["tolerance"].get<double>();
      if (o.contains("study_spacings")) cfg.study_spacings = o["study_spacings"].get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw OracleError(std::string("oracle config: ") + e.what());
  }
  cfg.grid.validate();
  if (!(cfg.tolerance > 0)) throw OracleError("oracle config: tolerance must be positive");
  return cfg;
}

OracleConfig load_oracle_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw OracleError("cannot open oracle config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_oracle_config(ss.str());
}

ResidualReport oracle_residual(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                               const TestWavefunction& psi, const FunctionOracle& fns,
                               const std::map<std::string, double>& parameters) {
  g.validate();
  const DiffOperator L = schrodinger_operator(p);
  const DiffOperator R = commutator(q, L) - alpha * L;

  Context ctx;
  ctx.fns = &fns;
  ctx.step = {g.tau, g.h, g.h, g.h};
  ctx.order = g.order;
  std::vector<std::string> names;
  collect(L, names);
  collect(q, names);
  collect(R, names);
  collect_parameters(alpha, names);
  for (const auto& n : names) {
    auto it = parameters.find(n);
    ctx.params[n] = it != parameters.end() ? cplx(it->second) : generic_parameter_value(n);
  }

  const NumericOperator nL = numeric(L), nQ = numeric(q), nR = numeric(R);
  std::map<MultiIndex, Expr> dpsi;
  const Expr psi_expr = psi.expr();
  for (const auto* op : {&nR, &nL})
    for (const auto& [m, c] : op->terms) {
      if (dpsi.count(m)) continue;
      Expr d = psi_expr;
      for (int a = 0; a < 4; ++a) d = diff(d, static_cast<Coord>(a), m[a]);
      dpsi.emplace(m, d);
    }

  const Field f = [&psi](const GridPoint& x) { return psi.extended_value(x); };
  const Field Lf = [&](const GridPoint& x) { return ctx.apply(nL, f, x); };
  const Field Qf = [&](const GridPoint& x) { return ctx.apply(nQ, f, x); };

  const std::vector<GridPoint> pts = g.samples();
  for (const auto& x : pts) {
    std::vector<GridPoint> probes{x};
    for (int a = 0; a < 4; ++a)
      for (double s : {-g.margin, g.margin}) {
        GridPoint y = x;
        y[a] += s;
        probes.push_back(y);
      }
    for (const auto& y : probes) try {
        for (const auto* op : {&nL, &nQ})
          for (const auto& [m, c] : op->terms) ctx.eval(c, y);
        ctx.eval(alpha, y);
      } catch (const SingularityError& e) {
        throw OracleError("singular locus within margin " + std::to_string(g.margin) + " of sample " +
                          point_string(x) + ": " + e.what());
      }
  }

  struct PointResult {
    double fd = 0, analytic = 0;
  };
  std::vector<PointResult> res(pts.size());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      const GridPoint& x = pts[k];
      try {
        const lcplx lpsi = Lf(x);
        const lcplx num = ctx.apply(nQ, Lf, x) - ctx.apply(nL, Qf, x) - lcplx(ctx.eval(alpha, x)) * lpsi;
        res[k].fd = static_cast<double>(std::abs(num) / (1 + std::abs(lpsi)));
        NumericPoint np;
        for (int a = 0; a < 4; ++a) np.coords[a] = x[a];
        np.params = ctx.params;
        auto exact = [&](const NumericOperator& op) {
          cplx acc = 0;
          for (const auto& [m, c] : op.terms) acc += ctx.eval(c, x) * eval_numeric(dpsi.at(m), np, fns);
          return acc;
        };
        res[k].analytic = std::abs(exact(nR)) / (1 + std::abs(exact(nL)));
      } catch (const SingularityError& e) {
        throw OracleError("singular value near sample " + point_string(x) + ": " + e.what());
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(g.threads, static_cast<unsigned>(pts.size())));
  if (threads == 1) {
    work(0, pts.size());
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (pts.size() + threads - 1) / threads;
    for (std::size_t from = 0; from < pts.size(); from += chunk)
      jobs.push_back(std::async(std::launch::async, work, from, std::min(pts.size(), from + chunk)));
    for (auto& j : jobs) j.get();
  }

  ResidualReport out;
  out.samples = pts.size();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (res[k].fd > out.fd) {
      out.fd = res[k].fd;
      out.worst = pts[k];
    }
    out.analytic = std::max(out.analytic, res[k].analytic);
  }
  return out;
}

ResidualReport oracle_residual(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                               const TestWavefunction& psi) {
  GenericTestFunctions fns;
  return oracle_residual(p, q, alpha, g, psi, fns);
}

double residual_norm(const Potential& p, const DiffOperator& q, const Expr& alpha, const GridSpec& g,
                     const TestWavefunction& psi) {
  return oracle_residual(p, q, alpha, g, psi).fd;
}

ConvergenceStudy convergence_study(const Potential& p, const DiffOperator& q, const Expr& alpha, GridSpec g,
                                   const TestWavefunction& psi, const std::vector<double>& spacings,
                                   const FunctionOracle& fns) {
  if (spacings.size() < 2) throw OracleError("convergence study needs at least two spacings");
  ConvergenceStudy s;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double h : spacings) {
    g.h = g.tau = h;
    const double r = oracle_residual(p, q, alpha, g, psi, fns).fd;
    s.rows.push_back({h, r});
    const double x = std::log(h), y = std::log(std::max(r, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(spacings.size());
  s.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return s;
}

ConvergenceStudy convergence_study(const Potential& p, const DiffOperator& q, const Expr& alpha, GridSpec g,
                                   const TestWavefunction& psi, const std::vector<double>& spacings) {
  GenericTestFunctions fns;
  return convergence_study(p, q, alpha, g, psi, spacings, fns);
}

}  // namespace schrosym
