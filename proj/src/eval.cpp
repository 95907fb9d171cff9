#include "schrosym/eval.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <unordered_map>

namespace schrosym {

namespace {

/// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double unit_from_hash(std::uint64_t h) { return static_cast<double>(h % 1000003) / 1000003.0; }

void check_finite(const cplx& v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw SingularityError(std::string("non-finite ") + what);
}

class Evaluator {
 public:
  Evaluator(const NumericPoint& p, const FunctionOracle& fns) : p_(p), fns_(fns) {}

  cplx expr(const Expr& e) {
    cplx sum = 0;
    for (const auto& t : e.terms()) sum += term(t);
    return sum;
  }

  cplx term(const Term& t) {
    cplx v(t.coef.re().get_d(), t.coef.im().get_d());
    for (const auto& f : t.factors) v *= power(atom(f.atom), f.exponent);
    check_finite(v, "term");
    return v;
  }

 private:
  cplx power(const cplx& base, const Rational& q) {
    if (is_integer(q)) {
      long n = q.get_num().get_si();
      if (n < 0 && std::abs(base) == 0.0) throw SingularityError("division by zero");
      cplx r = 1;
      cplx b = n < 0 ? 1.0 / base : base;
      for (long k = 0; k < std::labs(n); ++k) r *= b;
      return r;
    }
    if (std::abs(base) == 0.0) {
      if (sgn(q) > 0) return 0;
      throw SingularityError("negative power of zero");
    }
    return std::pow(base, cplx(q.get_d(), 0));
  }

  cplx atom(const Atom& a) {
    auto it = memo_.find(a.get());
    if (it != memo_.end()) return it->second;
    cplx v = compute(a);
    check_finite(v, "atom");
    memo_.emplace(a.get(), v);
    return v;
  }

  cplx compute(const Atom& a) {
    switch (a->kind) {
      case AtomKind::Coordinate:
        return p_.coord(a->coord);
      case AtomKind::Parameter: {
        auto it = p_.params.find(a->name);
        if (it == p_.params.end()) throw std::invalid_argument("unbound parameter " + a->name);
        return it->second;
      }
      case AtomKind::NumberRoot:
        return a->number.get_d();
      case AtomKind::PolyPower:
        return expr(a->args[0]);
      case AtomKind::Elementary: {
        cplx u = expr(a->args[0]);
        switch (a->elem) {
          case Elementary::Exp:
            return std::exp(u);
          case Elementary::Ln:
            if (std::abs(u) == 0.0) throw SingularityError("ln(0)");
            return std::log(u);
          case Elementary::Sin:
            return std::sin(u);
          case Elementary::Cos:
            return std::cos(u);
          case Elementary::Tan:
            if (std::abs(std::cos(u)) < 1e-300) throw SingularityError("tan pole");
            return std::tan(u);
          case Elementary::Tanh:
            return std::tanh(u);
          case Elementary::Arctan:
            if (std::abs(u * u + 1.0) == 0.0) throw SingularityError("arctan branch point");
            return std::atan(u);
        }
        break;
      }
      case AtomKind::Function: {
        std::vector<cplx> args;
        args.reserve(a->args.size());
        for (const auto& x : a->args) args.push_back(expr(x));
        std::vector<int> d = a->deriv;
        d.resize(args.size(), 0);
        return fns_.value(a->name, args, d);
      }
    }
    throw std::logic_error("unhandled atom kind");
  }

  const NumericPoint& p_;
  const FunctionOracle& fns_;
  std::unordered_map<const AtomNode*, cplx> memo_;
};

}  // namespace

cplx GenericTestFunctions::value(const std::string& name, const std::vector<cplx>& args,
                                 const std::vector<int>& deriv) const {
  cplx total = 0;
  for (int j = 0; j < 3; ++j) {
    std::uint64_t h = stable_hash(name + "#" + std::to_string(j));
    double weight = 0.5 + unit_from_hash(h);
    cplx exponent = 0, factor = weight;
    for (std::size_t k = 0; k < args.size(); ++k) {
      // rates in [-0.9, 0.9] keep the exponentials tame on the sample domain
      double rate = 1.8 * unit_from_hash(stable_hash(name + "#" + std::to_string(j) + "/" + std::to_string(k))) - 0.9;
      if (std::abs(rate) < 0.05) rate += 0.2;
      exponent += rate * args[k];
      int dk = k < deriv.size() ? deriv[k] : 0;
      for (int m = 0; m < dk; ++m) factor *= rate;
    }
    total += factor * std::exp(exponent);
  }
  return total;
}

cplx BoundFunctions::value(const std::string& name, const std::vector<cplx>& args,
                           const std::vector<int>& deriv) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) return fallback_.value(name, args, deriv);
  const FunctionBinding& b = it->second;
  if (b.slots.size() != args.size()) throw ArityError("function " + name + " bound with different arity");
  std::string key = name;
  for (int d : deriv) key += "," + std::to_string(d);
  Expr body;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto dit = derived_.find(key);
    if (dit == derived_.end()) {
      Expr e = b.body;
      for (std::size_t k = 0; k < deriv.size(); ++k) e = diff(e, b.slots[k], deriv[k]);
      dit = derived_.emplace(key, e).first;
    }
    body = dit->second;
  }
  NumericPoint p;
  for (std::size_t k = 0; k < args.size(); ++k) p.coords[static_cast<int>(b.slots[k])] = args[k];
  std::vector<std::string> params;
  collect_parameters(body, params);
  for (const auto& n : params) p.params[n] = generic_parameter_value(n);
  return eval_numeric(body, p, fallback_);
}

cplx eval_numeric(const Expr& e, const NumericPoint& p, const FunctionOracle& fns) {
  Evaluator ev(p, fns);
  return ev.expr(e);
}

cplx generic_parameter_value(const std::string& name) {
  if (name == "pi") return std::numbers::pi;
  return 0.3 + 1.4 * unit_from_hash(stable_hash("param:" + name));
}

NumericPoint make_point(const std::array<double, 4>& coords, const Expr& e) {
  NumericPoint p;
  for (int k = 0; k < 4; ++k) p.coords[k] = coords[k];
  std::vector<std::string> params;
  collect_parameters(e, params);
  for (const auto& n : params) p.params[n] = generic_parameter_value(n);
  return p;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Zero:
      return "Zero";
    case Decision::NonZero:
      return "NonZero";
    case Decision::Unknown:
      return "Unknown";
  }
  return "?";
}

const std::vector<std::array<double, 4>>& sample_schedule() {
  static const std::vector<std::array<double, 4>> pts = {
      {3.0 / 7, 5.0 / 11, 7.0 / 13, 2.0 / 3},   {5.0 / 9, 4.0 / 7, 3.0 / 10, 9.0 / 11},
      {2.0 / 5, 8.0 / 13, 11.0 / 17, 5.0 / 12}, {7.0 / 8, 3.0 / 11, 13.0 / 19, 4.0 / 9},
      {6.0 / 11, 9.0 / 10, 5.0 / 7, 3.0 / 13},  {11.0 / 12, 2.0 / 9, 7.0 / 15, 13.0 / 14},
      {4.0 / 13, 12.0 / 17, 9.0 / 14, 8.0 / 15}, {10.0 / 11, 6.0 / 13, 3.0 / 8, 11.0 / 16},
  };
  return pts;
}

ZeroTest zero_test(const Expr& e) {
  static const GenericTestFunctions generic;
  return zero_test(e, generic);
}

ZeroTest zero_test(const Expr& e, const FunctionOracle& fns) {
  ZeroTest out;
  if (e.is_zero() || clear_denominators(trig_to_exp(e)).is_zero()) {
    out.decision = Decision::Zero;
    return out;
  }
  NumericPoint p = make_point({0, 0, 0, 0}, e);
  int evaluated = 0;
  for (const auto& pt : sample_schedule()) {
    if (evaluated == kSamplePoints) break;
    for (int k = 0; k < 4; ++k) p.coords[k] = pt[k];
    cplx total = 0;
    double scale = 0;
    try {
      Evaluator ev(p, fns);
      for (const auto& t : e.terms()) {
        cplx v = ev.term(t);
        total += v;
        scale += std::abs(v);
      }
    } catch (const SingularityError&) {
      continue;
    }
    ++evaluated;
    if (std::abs(total) > kNonZeroThreshold * std::max(1.0, scale)) {
      out.decision = Decision::NonZero;
      out.witness = pt;
      out.witness_value = total;
      return out;
    }
  }
  out.decision = Decision::Unknown;
  return out;
}

}  // namespace schrosym
