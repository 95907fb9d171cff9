#include "schrosym/reports.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "schrosym/determining.hpp"
#include "schrosym/equiv.hpp"
#include "schrosym/liealg.hpp"

namespace schrosym {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

CommandReport start(const std::string& command, const json& args) {
  CommandReport r;
  r.document = {{"schema", kReportSchema}, {"command", {{"name", command}, {"arguments", args}}}};
  r.document["results"] = json::array();
  return r;
}

void finish(CommandReport& r) { r.document["exit_status"] = r.exit_status; }

json residual_json(const ResidualReport& r) {
  return {{"fd", r.fd},
          {"analytic", r.analytic},
          {"worst", {r.worst[0], r.worst[1], r.worst[2], r.worst[3]}},
          {"samples", r.samples}};
}

json oracle_json(const std::vector<OracleCheck>& checks, double tolerance) {
  json a = json::array();
  for (const auto& c : checks) {
    json j = {{"symmetry", c.symmetry}, {"symbolic", decision_name(c.symbolic)}, {"agrees", c.agrees}};
    if (c.residual) j["residual"] = residual_json(*c.residual);
    if (!c.refusal.empty()) j["refusal"] = c.refusal;
    if (c.refined_fd) j["refined_fd"] = *c.refined_fd;
    a.push_back(j);
  }
  return {{"tolerance", tolerance}, {"checks", a}};
}

void oracle_text(std::ostringstream& os, const std::vector<OracleCheck>& checks) {
  for (const auto& c : checks) {
    os << "    oracle " << c.symmetry << ": " << decision_name(c.symbolic) << ", ";
    if (c.residual)
      os << "fd residual " << c.residual->fd;
    else
      os << "refused (" << c.refusal << ")";
    if (c.refined_fd) os << ", at half spacing " << *c.refined_fd;
    os << (c.agrees ? "" : "  DISAGREES") << "\n";
  }
}

json fingerprint_json(const Fingerprint& f) {
  return {{"dim", f.dim},
          {"solvable", f.solvable},
          {"nilpotent", f.nilpotent},
          {"derived_series", f.derived_series},
          {"lower_central", f.lower_central},
          {"center_dim", f.center_dim},
          {"killing_rank", f.killing_rank}};
}

std::vector<std::string> free_generators() {
  return {"P0", "P1", "P2", "P3", "G1", "G2", "G3", "L1", "L2", "L3", "D", "A", "I"};
}

bool is_item_selector(const std::string& s) { return std::regex_match(s, std::regex(R"(T?\d+\.\d+)")); }

/// Reading the verdict rests on: the corrected one when it exists.
const Reading& active_reading(const TableEntry& e) { return e.corrected ? *e.corrected : e.printed; }

}  // namespace

Potential parse_potential_spec(const std::string& spec) {
  const std::string s = trim(spec);
  if (s == "free" || s.empty()) return Potential::free();
  std::map<std::string, Expr> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CommandError("potential component '" + item + "' needs the form name=expr");
    const std::string key = trim(item.substr(0, eq));
    if (key != "A1" && key != "A2" && key != "A0" && key != "V" && key != "e" && key != "g")
      throw CommandError("unknown potential component '" + key + "' (use A1, A2, A0, V, e, g)");
    if (parts.count(key)) throw CommandError("potential component '" + key + "' given twice");
    parts[key] = parse_expr(item.substr(eq + 1));
  }
  auto get = [&](const char* k, Expr dflt) { return parts.count(k) ? parts[k] : dflt; };
  if (parts.count("V")) {
    if (parts.count("A0") || parts.count("g")) throw CommandError("V excludes A0 and g");
    return Potential::from_scalar(get("A1", Expr()), get("A2", Expr()), parts["V"], get("e", Expr(1)));
  }
  return Potential::from_A0(get("A1", Expr()), get("A2", Expr()), get("A0", Expr()), get("e", Expr(1)),
                            get("g", Expr(1)));
}

std::vector<TableEntry> select_entries(const std::vector<TableEntry>& catalog,
                                       const std::vector<std::string>& selectors) {
  if (selectors.empty()) return catalog;
  std::vector<TableEntry> out;
  const std::regex re(R"(T?(\d+)(?:\.(\d+))?)");
  for (const auto& sel : selectors) {
    std::smatch m;
    if (!std::regex_match(sel, m, re)) throw CommandError("bad selector '" + sel + "' (use 2 or 2.6)");
    const int table = std::stoi(m[1]);
    const int item = m[2].matched ? std::stoi(m[2]) : 0;
    std::size_t found = 0;
    for (const auto& e : catalog)
      if (e.table == table && (item == 0 || e.item == item)) {
        out.push_back(e);
        ++found;
      }
    if (found == 0) throw CommandError("no catalog entry matches '" + sel + "'");
  }
  return out;
}

OracleCheck oracle_check(const Potential& p, const std::string& symmetry, const OracleConfig& cfg) {
  OracleCheck c;
  c.symmetry = symmetry;
  const DiffOperator q = parse_operator(symmetry);
  const SymmetryCheck sc = check_symmetry(p, q);
  c.symbolic = sc.satisfied;
  try {
    c.residual = oracle_residual(p, q, sc.alpha, cfg.grid, TestWavefunction{});
    if (c.symbolic == Decision::Zero) {
      c.agrees = c.residual->fd < cfg.tolerance;
      if (!c.agrees) {
        GridSpec fine = cfg.grid;
        fine.h /= 2;
        fine.tau /= 2;
        c.refined_fd = oracle_residual(p, q, sc.alpha, fine, TestWavefunction{}).fd;
        c.agrees = c.residual->fd >= 0.6 * std::pow(2.0, cfg.grid.order) * *c.refined_fd;
      }
    }
    if (c.symbolic == Decision::NonZero) c.agrees = c.residual->fd > 10 * cfg.tolerance;
  } catch (const OracleError& err) {
    c.refusal = err.what();
  }
  return c;
}

std::vector<OracleCheck> oracle_cross_check(const Reading& r, const std::string& e, const std::string& g,
                                            const OracleConfig& cfg) {
  const Potential p = reading_potential(r, e, g);
  std::vector<OracleCheck> out;
  for (const auto& s : r.symmetries) out.push_back(oracle_check(p, s, cfg));
  return out;
}

CommandReport cmd_verify_table(const std::vector<TableEntry>& catalog, const std::vector<std::string>& selectors,
                               const VerifyOptions& opt) {
  CommandReport rep = start("verify-table", {{"selectors", selectors}, {"oracle", opt.oracle}, {"jobs", opt.jobs}});
  const std::vector<TableEntry> chosen = select_entries(catalog, selectors);
  const std::vector<VerificationReport> reports = verify_catalog(chosen, opt.jobs);
  std::map<std::string, int> counts;
  std::ostringstream os;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const VerificationReport& r = reports[k];
    json j = json::parse(report_json(r));
    ++counts[status_name(r.status)];
    const ReadingReport& shown = r.status == EntryStatus::Quarantined ? *r.corrected : r.printed;
    std::size_t hold = 0;
    for (const auto& c : shown.symmetries) hold += c.decision == Decision::Zero;
    os << r.id << "  " << status_name(r.status) << "  " << hold << "/" << shown.symmetries.size()
       << " symmetries hold  " << shown.claimed << ": "
       << (shown.closed ? verdict_name(shown.label.verdict) : "not closed") << "\n";
    if (r.restricted && r.status == EntryStatus::Failed)
      os << "    restricted reading: " << (r.restricted->symmetries_hold() ? "holds" : "fails") << "\n";
    for (const auto& b : r.branches)
      os << "    branch " << b.condition << "  " << b.claimed << ": " << verdict_name(b.label.verdict) << "\n";
    if (r.status == EntryStatus::Failed) rep.exit_status = 1;
    if (opt.oracle) {
      const Reading& reading = r.status == EntryStatus::Quarantined ? *chosen[k].corrected : chosen[k].printed;
      std::vector<OracleCheck> checks = oracle_cross_check(reading, chosen[k].e, chosen[k].g, opt.oracle_config);
      for (const auto& c : checks)
        if (!c.agrees) rep.exit_status = 1;
      j["oracle"] = oracle_json(checks, opt.oracle_config.tolerance);
      oracle_text(os, checks);
    }
    rep.document["results"].push_back(j);
  }
  os << chosen.size() << " entries:";
  for (const auto& [name, n] : counts) os << " " << n << " " << name;
  os << "\n";
  rep.document["totals"] = counts;
  rep.summary = os.str();
  finish(rep);
  return rep;
}

CommandReport cmd_check(const std::string& potential_spec, const std::string& symmetry_spec,
                        const std::optional<OracleConfig>& oracle) {
  CommandReport rep = start("check", {{"potential", potential_spec}, {"symmetry", symmetry_spec}});
  const Potential p = parse_potential_spec(potential_spec);
  const DiffOperator q = parse_operator(symmetry_spec);
  const SymmetryCheck c = check_symmetry(p, q);
  json j = {{"symmetry", symmetry_spec},
            {"operator", q.to_string()},
            {"satisfied", decision_name(c.satisfied)},
            {"alpha", c.alpha.to_string()}};
  std::ostringstream os;
  os << symmetry_spec << ": " << decision_name(c.satisfied) << ", alpha = " << c.alpha.to_string() << "\n";
  if (c.satisfied != Decision::Zero) {
    j["residual"] = c.residual.to_string();
    os << "  residual [Q,L] - alpha L = " << c.residual.to_string() << "\n";
    json tags = json::array();
    try {
      for (const auto& t : raw_determining_residuals(p, q)) {
        const Decision d = zero_test(t.value).decision;
        if (d == Decision::Zero) continue;
        tags.push_back({{"tag", t.tag}, {"component", t.component}, {"decision", decision_name(d)}});
        os << "  determining equation " << t.tag << "[" << t.component << "]: " << decision_name(d) << "\n";
      }
    } catch (const std::exception& e) {
      j["determining_note"] = e.what();
    }
    j["failing_equations"] = tags;
  }
  if (c.satisfied == Decision::NonZero) rep.exit_status = 1;
  if (oracle) {
    std::vector<OracleCheck> checks;
    OracleCheck oc = oracle_check(p, symmetry_spec, *oracle);
    if (!oc.agrees) rep.exit_status = 1;
    checks.push_back(oc);
    j["oracle"] = oracle_json(checks, oracle->tolerance);
    oracle_text(os, checks);
  }
  rep.document["results"].push_back(j);
  rep.summary = os.str();
  finish(rep);
  return rep;
}

CommandReport cmd_algebra(const std::vector<std::string>& symmetry_specs) {
  CommandReport rep = start("algebra", {{"symmetries", symmetry_specs}});
  std::vector<std::string> labels;
  for (const auto& s : symmetry_specs) {
    if (s == "@free") {
      for (const auto& g : free_generators()) labels.push_back(g);
    } else {
      labels.push_back(s);
    }
  }
  if (labels.empty()) throw CommandError("algebra needs at least one symmetry");
  std::vector<DiffOperator> gens;
  for (const auto& l : labels) gens.push_back(parse_operator(l));
  const ClosureResult cl = close_algebra(gens, labels);
  json j = {{"closed", cl.closed}, {"basis", cl.constants.labels}};
  std::ostringstream os;
  if (!cl.closed) {
    j["witness"] = cl.failure;
    os << "not closed: " << cl.failure << "\n";
    rep.exit_status = 1;
  } else {
    const StructureConstants& sc = cl.constants;
    json brackets = json::array();
    os << "basis (" << sc.dim() << "):";
    for (const auto& l : sc.labels) os << " " << l;
    os << "\n";
    for (std::size_t a = 0; a < sc.dim(); ++a)
      for (std::size_t b = a + 1; b < sc.dim(); ++b) {
        std::string rhs;
        for (std::size_t k = 0; k < sc.dim(); ++k) {
          const Expr& c = sc.c[a][b][k];
          if (c.is_zero()) continue;
          rhs += (rhs.empty() ? "" : " + ") + std::string("(") + c.to_string() + ")*" + sc.labels[k];
        }
        if (rhs.empty()) continue;
        const std::string lhs = "[" + sc.labels[a] + ", " + sc.labels[b] + "]";
        brackets.push_back({{"bracket", lhs}, {"value", rhs}});
        os << "  " << lhs << " = " << rhs << "\n";
      }
    const AlgebraReport ar = analyze(sc);
    j["brackets"] = brackets;
    j["fingerprint"] = fingerprint_json(ar.generic);
    j["candidates"] = ar.candidates;
    json strata = json::array();
    for (const auto& s : ar.strata)
      strata.push_back({{"condition", s.condition}, {"fingerprint", fingerprint_json(s.fingerprint)}});
    j["strata"] = strata;
    j["singular"] = ar.singular;
    os << "fingerprint: " << ar.generic.to_string() << "\n";
    os << "candidates:";
    for (const auto& c : ar.candidates) os << " " << c;
    os << (ar.candidates.empty() ? " none" : "") << "\n";
    for (const auto& s : ar.strata) os << "  stratum " << s.condition << ": " << s.fingerprint.to_string() << "\n";
  }
  rep.document["results"].push_back(j);
  rep.summary = os.str();
  finish(rep);
  return rep;
}

CommandReport cmd_transform(const std::vector<TableEntry>& catalog, const std::string& transformation_spec,
                            const std::string& target) {
  CommandReport rep = start("transform", {{"transformation", transformation_spec}, {"target", target}});
  const PointTransformation tr = parse_transformation(transformation_spec);
  json j = {{"transformation", tr.name}, {"multiplier", tr.multiplier().to_string()}};
  std::ostringstream os;
  auto transform_potential = [&](const Potential& p) {
    const TransformedOperator t = transform_schrodinger(tr, schrodinger_operator(p));
    const Potential q = potential_from_operator(t.normalized, p.e);
    j["factor"] = t.factor.to_string();
    j["potential"] = {{"A1", q.A1.to_string()}, {"A2", q.A2.to_string()}, {"V", q.V.to_string()}};
    os << "factor: " << t.factor.to_string() << "\n";
    os << "A1 = " << q.A1.to_string() << "\nA2 = " << q.A2.to_string() << "\nV = " << q.V.to_string() << "\n";
    return q;
  };
  if (target == "L_free") {
    transform_potential(Potential::free());
  } else if (is_item_selector(target)) {
    const TableEntry e = select_entries(catalog, {target}).front();
    const Reading& r = active_reading(e);
    const Potential q = transform_potential(reading_potential(r, e.e, e.g));
    json flags = json::array();
    for (const auto& s : r.symmetries) {
      const DiffOperator moved = conjugate_operator(tr, parse_operator(s));
      const Decision before = check_symmetry(reading_potential(r, e.e, e.g), parse_operator(s)).satisfied;
      const Decision after = check_symmetry(q, moved).satisfied;
      flags.push_back({{"symmetry", s}, {"before", decision_name(before)}, {"after", decision_name(after)}});
      os << "  " << s << ": " << decision_name(before) << " -> " << decision_name(after) << "\n";
      if (before == Decision::Zero && after != Decision::Zero) rep.exit_status = 1;
    }
    j["entry"] = e.id;
    j["symmetries"] = flags;
  } else if (target == "free" || target.find('=') != std::string::npos) {
    transform_potential(parse_potential_spec(target));
  } else {
    const DiffOperator moved = conjugate_operator(tr, parse_operator(target));
    j["operator"] = moved.to_string();
    os << target << " -> " << moved.to_string() << "\n";
    std::vector<std::string> names = free_generators();
    const std::string prefix = "oscillator:";
    if (transformation_spec.rfind(prefix, 0) == 0) {
      const std::string w = transformation_spec.substr(prefix.size());
      for (const char* f : {"Ap", "Am"}) names.push_back(std::string(f) + "(" + w + ")");
      for (const char* f : {"Bp", "Bm"})
        for (int a = 1; a <= 3; ++a) names.push_back(std::string(f) + std::to_string(a) + "(" + w + ")");
    }
    json multiples = json::array();
    for (const auto& n : names) {
      const SpanResult s = span_express(moved, {parse_operator(n)});
      if (s.status != SpanStatus::InSpan) continue;
      multiples.push_back({{"generator", n}, {"constant", s.coefficients[0].to_string()}});
      os << "  = (" << s.coefficients[0].to_string() << ") * " << n << "\n";
    }
    j["multiple_of"] = multiples;
  }
  rep.document["results"].push_back(j);
  rep.summary = os.str();
  finish(rep);
  return rep;
}

CommandReport cmd_worked_examples() {
  CommandReport rep = start("worked-examples", json::object());
  std::ostringstream os;
  for (const auto& r : worked_example_suite()) {
    rep.document["results"].push_back(json::parse(report_json(r)));
    os << r.id << "  " << status_name(r.status) << "\n";
    if (r.status == EntryStatus::Failed) rep.exit_status = 1;
  }
  rep.summary = os.str();
  finish(rep);
  return rep;
}

}  // namespace schrosym
