#include "schrosym/catalog.hpp"

#include <fstream>
#include <future>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "schrosym/parse.hpp"

#ifndef SCHROSYM_DATA_DIR
#define SCHROSYM_DATA_DIR "data"
#endif

namespace schrosym {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& id, const std::string& what) {
  throw CatalogError("catalog entry " + (id.empty() ? std::string("<unnamed>") : id) + ": " + what);
}

std::string get_string(const json& j, const char* key, const std::string& id, bool required = true,
                       const std::string& fallback = "") {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) schema_error(id, std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!it->is_string()) schema_error(id, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

bool get_bool(const json& j, const char* key, const std::string& id) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) schema_error(id, std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

std::vector<std::string> get_strings(const json& j, const char* key, const std::string& id, bool required) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) schema_error(id, std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_array()) schema_error(id, std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& s : *it) {
    if (!s.is_string()) schema_error(id, std::string("field '") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::string> functions_in(const std::string& text, bool op) {
  std::vector<std::string> out;
  if (op) {
    DiffOperator d = parse_operator(text);
    for (const auto& [m, c] : d.coefficients()) collect_functions(c, out);
  } else {
    collect_functions(parse_expr(text), out);
  }
  return out;
}

/// Parses every field so malformed strings surface at load time.
void validate_reading(const Reading& r, const std::string& id) {
  std::set<std::string> fields;
  for (const std::string* s : {&r.A1, &r.A2, &r.A0}) {
    try {
      for (auto& f : functions_in(*s, false)) fields.insert(f);
    } catch (const std::exception& ex) {
      schema_error(id, "cannot parse field '" + *s + "': " + ex.what());
    }
  }
  if (r.symmetries.empty()) schema_error(id, "no symmetries listed");
  for (const auto& q : r.symmetries) {
    std::vector<std::string> fs;
    try {
      fs = functions_in(q, true);
    } catch (const std::exception& ex) {
      schema_error(id, "cannot parse symmetry '" + q + "': " + ex.what());
    }
    for (const auto& f : fs)
      if (!fields.count(f)) schema_error(id, "symmetry '" + q + "' uses function " + f + " absent from the potential");
  }
  if (r.algebra.empty()) schema_error(id, "empty algebra label");
}

Reading read_reading(const json& j, const std::string& id, const Reading* base) {
  Reading r = base ? *base : Reading{};
  bool req = base == nullptr;
  r.A1 = get_string(j, "A1", id, req, r.A1);
  r.A2 = get_string(j, "A2", id, req, r.A2);
  r.A0 = get_string(j, "A0", id, req, r.A0);
  if (j.contains("A3")) {
    std::string a3 = get_string(j, "A3", id);
    if (a3 != "0") schema_error(id, "A3 must vanish");
  }
  if (j.contains("symmetries") || req) r.symmetries = get_strings(j, "symmetries", id, true);
  r.algebra = get_string(j, "algebra", id, req, r.algebra);
  return r;
}

TableEntry read_entry(const json& j, const std::string& e, const std::string& g) {
  if (!j.is_object()) schema_error("", "entry must be an object");
  TableEntry t;
  t.id = get_string(j, "id", "");
  for (const char* k : {"table", "item"})
    if (!j.contains(k) || !j[k].is_number_integer())
      schema_error(t.id, std::string("field '") + k + "' must be an integer");
  t.table = j["table"].get<int>();
  t.item = j["item"].get<int>();
  if (t.id != "T" + std::to_string(t.table) + "." + std::to_string(t.item))
    schema_error(t.id, "id does not match table and item");
  t.printed = read_reading(j, t.id, nullptr);
  validate_reading(t.printed, t.id);
  if (j.contains("corrected")) {
    const json& c = j["corrected"];
    if (!c.is_object()) schema_error(t.id, "'corrected' must be an object");
    t.correction_reason = get_string(c, "reason", t.id);
    t.corrected = read_reading(c, t.id, &t.printed);
    validate_reading(*t.corrected, t.id);
  }
  if (j.contains("restricted")) {
    const json& c = j["restricted"];
    if (!c.is_object()) schema_error(t.id, "'restricted' must be an object");
    t.restriction_reason = get_string(c, "reason", t.id);
    t.restricted = read_reading(c, t.id, &t.printed);
    validate_reading(*t.restricted, t.id);
  }
  t.star = get_bool(j, "star", t.id);
  t.blackstar = get_bool(j, "blackstar", t.id);
  t.notes = get_strings(j, "notes", t.id, false);
  t.e = get_string(j, "e", t.id, false, e);
  t.g = get_string(j, "g", t.id, false, g);
  if (j.contains("branches")) {
    if (!j["branches"].is_array()) schema_error(t.id, "'branches' must be an array");
    for (const auto& b : j["branches"]) {
      Branch br;
      br.condition = get_string(b, "condition", t.id);
      br.algebra = get_string(b, "algebra", t.id);
      if (!b.contains("bindings") || !b["bindings"].is_object()) schema_error(t.id, "branch needs a bindings object");
      for (auto it = b["bindings"].begin(); it != b["bindings"].end(); ++it) {
        if (!it.value().is_string()) schema_error(t.id, "branch binding values must be strings");
        if (!SymbolTable::defaults().is_parameter(it.key()))
          schema_error(t.id, "branch binds unknown parameter " + it.key());
        br.bindings[it.key()] = it.value().get<std::string>();
      }
      t.branches.push_back(std::move(br));
    }
  }
  return t;
}

Bindings parameter_bindings(const std::map<std::string, std::string>& b) {
  Bindings out;
  for (const auto& [k, v] : b) out.symbols[k] = parse_expr(v);
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

}  // namespace

std::vector<TableEntry> parse_catalog(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw CatalogError(std::string("catalog is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw CatalogError("catalog needs an 'entries' array");
  std::string e = "1", g = "1";
  if (doc.contains("coupling")) {
    e = get_string(doc["coupling"], "e", "coupling", false, e);
    g = get_string(doc["coupling"], "g", "coupling", false, g);
  }
  std::vector<TableEntry> out;
  std::set<std::string> seen;
  for (const auto& j : doc["entries"]) {
    TableEntry t = read_entry(j, e, g);
    if (!seen.insert(t.id).second) schema_error(t.id, "duplicate id");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TableEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string default_catalog_path() { return std::string(SCHROSYM_DATA_DIR) + "/catalog.json"; }

bool ReadingReport::symmetries_hold() const {
  for (const auto& s : symmetries)
    if (s.decision != Decision::Zero) return false;
  return true;
}

const char* status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Verified: return "verified";
    case EntryStatus::Quarantined: return "quarantined";
    case EntryStatus::Failed: return "failed";
    case EntryStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

Potential reading_potential(const Reading& r, const std::string& e, const std::string& g,
                            const std::map<std::string, std::string>& bindings) {
  Bindings b = parameter_bindings(bindings);
  auto field = [&](const std::string& s) { return substitute(parse_expr(s), b); };
  return Potential::from_A0(field(r.A1), field(r.A2), field(r.A0), field(e), field(g));
}

ReadingReport verify_reading(const Reading& r, const std::string& e, const std::string& g,
                             const std::map<std::string, std::string>& bindings, const std::string& condition) {
  ReadingReport rep;
  rep.condition = condition;
  rep.claimed = r.algebra;
  Bindings b = parameter_bindings(bindings);
  Potential p = reading_potential(r, e, g, bindings);
  std::vector<DiffOperator> gens;
  std::vector<std::string> labels;
  for (const auto& q : r.symmetries) {
    DiffOperator op = parse_operator(q).map_coefficients([&](const Expr& c) { return substitute(c, b); });
    SymmetryCheck c = check_symmetry(p, op);
    SymmetryVerdict v;
    v.symmetry = q;
    v.decision = c.satisfied;
    v.alpha = c.alpha.to_string();
    if (!c.failures.empty()) {
      const auto& f = c.failures.front();
      std::ostringstream os;
      os << "coefficient of d^(" << f.index[0] << f.index[1] << f.index[2] << f.index[3]
         << ") is " << decision_name(f.test.decision);
      v.detail = os.str();
    }
    rep.symmetries.push_back(v);
    gens.push_back(op);
    labels.push_back(q);
  }
  gens.push_back(named_generator("P0"));
  labels.push_back("P0");
  gens.push_back(named_generator("I"));
  labels.push_back("I");
  ClosureResult cl = close_algebra(gens, labels);
  rep.closed = cl.closed;
  rep.closure_failure = cl.failure;
  rep.basis = cl.constants.labels;
  if (!cl.closed) {
    rep.label.verdict = LabelVerdict::Indeterminate;
    rep.label.note = "listed symmetries do not close: " + cl.failure;
    return rep;
  }
  AlgebraReport ar = analyze(cl.constants);
  rep.fingerprint = ar.generic;
  rep.candidates = ar.candidates;
  rep.label = match_label(r.algebra, ar.generic);
  return rep;
}

namespace {

bool reading_ok(const ReadingReport& r) {
  return r.symmetries_hold() && r.closed && r.label.verdict == LabelVerdict::Match;
}

bool reading_unknown(const ReadingReport& r) {
  for (const auto& s : r.symmetries)
    if (s.decision == Decision::Unknown) return true;
  return r.label.verdict == LabelVerdict::Indeterminate;
}

void annotate(VerificationReport& rep, const ReadingReport& r, const std::string& which) {
  for (const auto& s : r.symmetries)
    if (s.decision != Decision::Zero)
      rep.annotations.push_back(which + ": symmetry " + s.symmetry + " is " + decision_name(s.decision) + " (" +
                                s.detail + ")");
  if (!r.closed) rep.annotations.push_back(which + ": closure failed at " + r.closure_failure);
  if (r.closed && r.label.verdict != LabelVerdict::Match)
    rep.annotations.push_back(which + ": label " + r.claimed + " is " + verdict_name(r.label.verdict) + " (" +
                              r.label.note + ")");
  if (r.label.coarse && r.label.verdict == LabelVerdict::Match)
    rep.annotations.push_back(which + ": label " + r.claimed + " matched on coarse invariants only");
}

}  // namespace

VerificationReport verify_entry(const TableEntry& entry) {
  VerificationReport rep;
  rep.id = entry.id;
  rep.printed = verify_reading(entry.printed, entry.e, entry.g);
  annotate(rep, rep.printed, "as printed");
  if (entry.corrected) {
    rep.corrected = verify_reading(*entry.corrected, entry.e, entry.g);
    annotate(rep, *rep.corrected, "corrected reading");
    rep.annotations.push_back("correction: " + entry.correction_reason);
  }
  if (entry.restricted) {
    rep.restricted = verify_reading(*entry.restricted, entry.e, entry.g);
    annotate(rep, *rep.restricted, "restricted reading");
    rep.annotations.push_back("restriction: " + entry.restriction_reason);
  }
  if (reading_ok(rep.printed)) {
    rep.status = EntryStatus::Verified;
  } else if (rep.corrected && reading_ok(*rep.corrected)) {
    rep.status = EntryStatus::Quarantined;
    rep.annotations.push_back("as-printed fails; corrected reading verified");
  } else if (reading_unknown(rep.printed) && (!rep.corrected || reading_unknown(*rep.corrected))) {
    rep.status = EntryStatus::Indeterminate;
  } else {
    rep.status = EntryStatus::Failed;
    if (rep.restricted && reading_ok(*rep.restricted))
      rep.annotations.push_back("as-printed fails; only the restricted reading verifies");
  }
  const Reading* active = &entry.printed;
  if (!rep.printed.symmetries_hold()) {
    if (rep.corrected && rep.corrected->symmetries_hold())
      active = &*entry.corrected;
    else if (rep.restricted && rep.restricted->symmetries_hold())
      active = &*entry.restricted;
  }
  for (const auto& br : entry.branches) {
    Reading r = *active;
    r.algebra = br.algebra;
    ReadingReport b = verify_reading(r, entry.e, entry.g, br.bindings, br.condition);
    annotate(rep, b, "branch " + br.condition);
    if (!reading_ok(b) && rep.status != EntryStatus::Indeterminate) rep.status = EntryStatus::Failed;
    rep.branches.push_back(std::move(b));
  }
  for (const auto& n : entry.notes) rep.annotations.push_back("note: " + n);
  return rep;
}

std::vector<VerificationReport> verify_catalog(const std::vector<TableEntry>& entries, unsigned jobs) {
  std::vector<VerificationReport> out(entries.size());
  if (jobs <= 1) {
    for (std::size_t k = 0; k < entries.size(); ++k) out[k] = verify_entry(entries[k]);
    return out;
  }
  std::size_t next = 0;
  std::vector<std::future<void>> running;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= entries.size()) return;
        k = next++;
      }
      out[k] = verify_entry(entries[k]);
    }
  };
  for (unsigned j = 0; j < jobs; ++j) running.push_back(std::async(std::launch::async, worker));
  for (auto& f : running) f.get();
  return out;
}

namespace {

struct Instance {
  std::vector<Expr> fields;  // A1, A2, A0, e, g
  std::vector<DiffOperator> symmetries;
};

Instance instantiate_reading(const TableEntry& entry, const std::map<std::string, std::string>& functions,
                             const std::map<std::string, std::string>& parameters, bool use_corrected) {
  const Reading& r = use_corrected && entry.corrected ? *entry.corrected : entry.printed;
  Instance in;
  std::map<std::string, std::size_t> arity;
  for (const std::string* s : {&r.A1, &r.A2, &r.A0, &entry.e, &entry.g}) {
    in.fields.push_back(parse_expr(*s));
    collect_function_arities(in.fields.back(), arity);
  }
  for (const auto& q : r.symmetries) {
    in.symmetries.push_back(parse_operator(q));
    for (const auto& [m, c] : in.symmetries.back().coefficients()) collect_function_arities(c, arity);
  }
  Bindings b = parameter_bindings(parameters);
  for (const auto& [name, body] : functions) {
    Expr e = parse_expr(body);
    if (e.depends_on(Coord::T)) throw std::invalid_argument("function bodies must not use t");
    auto it = arity.find(name);
    if (it == arity.end()) throw std::invalid_argument("function " + name + " does not occur in " + entry.id);
    FunctionBinding fb;
    fb.body = e;
    for (std::size_t k = 0; k < kSpaceCoords.size(); ++k) {
      if (k < it->second)
        fb.slots.push_back(kSpaceCoords[k]);
      else if (e.depends_on(kSpaceCoords[k]))
        throw ArityError("body of " + name + " uses slot " + std::to_string(k + 1) + " but " + name + " takes " +
                         std::to_string(it->second) + " arguments");
    }
    b.functions[name] = fb;
  }
  for (const auto& [name, n] : arity)
    if (!b.functions.count(name)) throw std::invalid_argument("no binding for function " + name + " in " + entry.id);
  for (auto& f : in.fields) f = substitute(f, b);
  for (auto& q : in.symmetries) q = q.map_coefficients([&](const Expr& c) { return substitute(c, b); });
  return in;
}

}  // namespace

Potential instantiate(const TableEntry& entry, const std::map<std::string, std::string>& functions,
                      const std::map<std::string, std::string>& parameters, bool use_corrected) {
  Instance in = instantiate_reading(entry, functions, parameters, use_corrected);
  return Potential::from_A0(in.fields[0], in.fields[1], in.fields[2], in.fields[3], in.fields[4]);
}

std::vector<DiffOperator> instantiate_symmetries(const TableEntry& entry,
                                                 const std::map<std::string, std::string>& functions,
                                                 const std::map<std::string, std::string>& parameters,
                                                 bool use_corrected) {
  return instantiate_reading(entry, functions, parameters, use_corrected).symmetries;
}

namespace {

WorkedExample example(std::string id, std::string description, Reading reading) {
  WorkedExample w;
  w.id = std::move(id);
  w.description = std::move(description);
  w.reading = std::move(reading);
  return w;
}

}  // namespace

std::vector<WorkedExample> worked_examples() {
  const std::string z = "(D1[F](rho,phi) + 2*F(rho,phi))";
  const std::string k = "w*(D11[F](rho,phi) + 2*D1[F](rho,phi))";
  const std::string a1 = "x3*diff(F(x1,x2),x1) + diff(R(x1,x2),x2)";
  const std::string a2 = "x3*diff(F(x1,x2),x2) - diff(R(x1,x2),x1)";
  const std::string sign = "the term linear in w has the opposite sign: d_3 A0 = -w^2 x3 + w K with K = -F";
  const std::string cancel =
      "the multiplier enters with a plus sign and 2w x.A cancels 2wK, so A0 has no 4w d_rho F term";
  std::vector<WorkedExample> out;

  out.push_back(example("translation-gauge", "vector potential admitting P3 + K with K = -F and scalar part G(x1,x2)",
                        {a1, a2, "G(x1,x2)", {"P3 - F(x1,x2)"}, "3n_{1,1}"}));

  out.push_back(example("rotation-kappa", "vector potential admitting L3 + kappa t with A0 = G(rt,x3) + kappa phi",
                        {"x1*R1(rho,x3) + x2*R2(rho,x3)", "-x1*R2(rho,x3) + x2*R1(rho,x3)", "G(rt,x3) + kappa*phi",
                         {"L3 + kappa*t"}, "n_{3,1}"}));

  WorkedExample screw = example("screw-kappa", "vector potential admitting L3 + P3 + kappa t, depending on phi + x3",
                                {"x1*g1(rho,phi + x3) + x2*g2(rho,phi + x3)",
                                 "-x1*g2(rho,phi + x3) + x2*g1(rho,phi + x3)", "G(rt,phi + x3) + kappa*phi",
                                 {"L3 + P3 + kappa*t"}, "n_{3,1}"});
  screw.corrected = Reading{"x1*g1(rho,phi - x3) + x2*g2(rho,phi - x3)", "-x1*g2(rho,phi - x3) + x2*g1(rho,phi - x3)",
                            "G(rt,phi - x3) + kappa*phi", {"L3 + P3 + kappa*t"}, "n_{3,1}"};
  screw.correction_reason = "the flow of d_phi + d_3 preserves phi - x3, not phi + x3";
  out.push_back(screw);

  out.push_back(example("rotation-translation", "rotation-kappa restricted by the additional symmetry P3",
                        {"x1*R1(rho) + x2*R2(rho)", "-x1*R2(rho) + x2*R1(rho)", "G(rt) + kappa*phi",
                         {"L3 + kappa*t", "P3"}, "n_{3,1}+n_{1,1}"}));

  WorkedExample boost =
      example("boost-gauge", "translation-gauge field with the scalar potential admitting B+3(w) - exp(wt)F",
              {a1, a2, "G(x1,x2) - w^2*x3^2/2 + w*x3*F(x1,x2)", {"Bp3(w) - exp(w*t)*F(x1,x2)"}, "s_{2,1}+n_{1,1}"});
  boost.corrected = boost.reading;
  boost.corrected->A0 = "G(x1,x2) - w^2*x3^2/2 - w*x3*F(x1,x2)";
  boost.correction_reason = sign;
  out.push_back(boost);

  WorkedExample conf =
      example("conformal-gauge", "vector potential with Phi = (d_rho + 2)F admitting A+(w) with a multiplier",
              {"diff(Ft(theta,phi) + " + z + ",x1) + diff(G(theta,phi),x2)",
               "diff(Ft(theta,phi) + " + z + ",x2) - diff(G(theta,phi),x1)",
               "-w^2*r^2/2 + R(theta,phi)/r^2 + 4*w*D1[F](rho,phi)", {"Ap(w) - exp(2*w*t)*" + k}, "s_{2,1}+n_{1,1}"});
  conf.restricted = Reading{"diff(" + z + ",x1) + diff(G(theta),x2)", "diff(" + z + ",x2) - diff(G(theta),x1)",
                            "-w^2*r^2/2 + R(theta,phi)/r^2", {"Ap(w) + exp(2*w*t)*" + k}, "s_{2,1}+n_{1,1}"};
  conf.restriction_reason = cancel + "; x.A must be constant, so Ft vanishes and G depends on theta only";
  out.push_back(conf);

  WorkedExample grad =
      example("conformal-gradient", "conformal-gauge with vanishing Ft and G: the multiplier alone",
              {"diff(" + z + ",x1)", "diff(" + z + ",x2)", "-w^2*r^2/2 + R(theta,phi)/r^2 + 4*w*D1[F](rho,phi)",
               {"Ap(w) - exp(2*w*t)*" + k}, "s_{2,1}+n_{1,1}"});
  grad.corrected = grad.reading;
  grad.corrected->A0 = "-w^2*r^2/2 + R(theta,phi)/r^2";
  grad.corrected->symmetries = {"Ap(w) + exp(2*w*t)*" + k};
  grad.correction_reason = cancel;
  out.push_back(grad);
  return out;
}

std::vector<VerificationReport> worked_example_suite() {
  std::vector<VerificationReport> out;
  for (const auto& w : worked_examples()) {
    TableEntry t;
    t.id = w.id;
    t.printed = w.reading;
    t.corrected = w.corrected;
    t.correction_reason = w.correction_reason;
    t.restricted = w.restricted;
    t.restriction_reason = w.restriction_reason;
    VerificationReport r = verify_entry(t);
    r.annotations.insert(r.annotations.begin(), w.description);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

json reading_json(const ReadingReport& r) {
  json j;
  j["condition"] = r.condition;
  j["symmetries"] = json::array();
  for (const auto& s : r.symmetries) {
    json q = {{"symmetry", s.symmetry}, {"decision", decision_name(s.decision)}, {"alpha", s.alpha}};
    if (!s.detail.empty()) q["detail"] = s.detail;
    j["symmetries"].push_back(q);
  }
  j["closed"] = r.closed;
  if (!r.closed) j["closure_failure"] = r.closure_failure;
  j["basis"] = r.basis;
  if (r.closed) {
    const Fingerprint& f = r.fingerprint;
    j["fingerprint"] = {{"dim", f.dim},
                        {"solvable", f.solvable},
                        {"nilpotent", f.nilpotent},
                        {"derived_series", f.derived_series},
                        {"lower_central", f.lower_central},
                        {"center_dim", f.center_dim},
                        {"killing_rank", f.killing_rank}};
    j["candidates"] = r.candidates;
  }
  j["claimed"] = r.claimed;
  j["label"] = {{"verdict", verdict_name(r.label.verdict)}, {"coarse", r.label.coarse}, {"note", r.label.note}};
  return j;
}

std::string reading_text(const ReadingReport& r, const std::string& indent) {
  std::ostringstream os;
  for (const auto& s : r.symmetries)
    os << indent << decision_name(s.decision) << "  " << s.symmetry << "  alpha = " << s.alpha << "\n";
  if (r.closed) {
    os << indent << "algebra dim " << r.fingerprint.dim << ": " << r.fingerprint.to_string() << "\n";
    os << indent << "claimed " << r.claimed << ": " << verdict_name(r.label.verdict)
       << (r.label.coarse ? " (coarse)" : "") << "\n";
    if (!r.candidates.empty()) os << indent << "candidates: " << join(r.candidates, ", ") << "\n";
  } else {
    os << indent << "not closed: " << r.closure_failure << "\n";
  }
  return os.str();
}

}  // namespace

std::string report_json(const VerificationReport& r, int indent) {
  json j;
  j["id"] = r.id;
  j["status"] = status_name(r.status);
  j["printed"] = reading_json(r.printed);
  if (r.corrected) j["corrected"] = reading_json(*r.corrected);
  if (r.restricted) j["restricted"] = reading_json(*r.restricted);
  j["branches"] = json::array();
  for (const auto& b : r.branches) j["branches"].push_back(reading_json(b));
  j["annotations"] = r.annotations;
  return j.dump(indent);
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.id << "  " << status_name(r.status) << "\n";
  os << "  as printed\n" << reading_text(r.printed, "    ");
  if (r.corrected) os << "  corrected\n" << reading_text(*r.corrected, "    ");
  if (r.restricted) os << "  restricted\n" << reading_text(*r.restricted, "    ");
  for (const auto& b : r.branches) os << "  branch " << b.condition << "\n" << reading_text(b, "    ");
  for (const auto& a : r.annotations) os << "  * " << a << "\n";
  return os.str();
}

}  // namespace schrosym
