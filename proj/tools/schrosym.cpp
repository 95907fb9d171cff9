#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "schrosym/reports.hpp"

using namespace schrosym;

namespace {

struct Shared {
  std::string json_path;
  std::string config_path;
  std::string catalog_path;
  unsigned jobs = 0;
  bool oracle = false;
};

std::string catalog_path(const Shared& s) {
  if (!s.catalog_path.empty()) return s.catalog_path;
  if (const char* env = std::getenv("SCHROSYM_CATALOG")) return env;
  return default_catalog_path();
}

/// Oracle settings plus an optional top-level "jobs".
VerifyOptions options(const Shared& s) {
  VerifyOptions opt;
  opt.oracle = s.oracle;
  opt.jobs = 1;
  if (!s.config_path.empty()) {
    std::ifstream in(s.config_path);
    if (!in) throw CommandError("cannot open config " + s.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    opt.oracle_config = parse_oracle_config(ss.str());
    const auto j = nlohmann::json::parse(ss.str());
    if (j.contains("jobs")) opt.jobs = j["jobs"].get<unsigned>();
  }
  if (s.jobs > 0) opt.jobs = s.jobs;
  return opt;
}

int emit(const CommandReport& r, const Shared& s) {
  std::cout << r.summary;
  if (s.json_path == "-") {
    std::cout << r.document.dump(2) << "\n";
  } else if (!s.json_path.empty()) {
    std::ofstream out(s.json_path);
    if (!out) throw CommandError("cannot write " + s.json_path);
    out << r.document.dump(2) << "\n";
  }
  return r.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of magnetic Schroedinger equations"};
  app.require_subcommand(1);
  Shared s;
  auto shared_flags = [&](CLI::App* c) {
    c->add_option("--json", s.json_path, "Write the JSON report to a file, '-' for stdout");
    c->add_option("--config", s.config_path, "Oracle grid config, may also set \"jobs\"");
  };

  std::vector<std::string> selectors;
  auto* verify = app.add_subcommand("verify-table", "Verify catalog items, e.g. 3 or 1.8");
  verify->add_option("selectors", selectors, "Table numbers or table.item ids");
  verify->add_flag("--oracle", s.oracle, "Cross-check symmetries with the finite-difference oracle");
  verify->add_option("--jobs", s.jobs, "Worker threads");
  verify->add_option("--catalog", s.catalog_path, "Catalog file (default: SCHROSYM_CATALOG or bundled)");
  shared_flags(verify);

  std::string potential, symmetry;
  auto* check = app.add_subcommand("check", "Check one symmetry against one potential");
  check->add_option("potential", potential, "free, V=..., or A1=..;A2=..;A0=..;e=..;g=..")->required();
  check->add_option("symmetry", symmetry, "Operator, e.g. D or P3 - F(x1,x2)")->required();
  check->add_flag("--oracle", s.oracle, "Also run the finite-difference oracle");
  shared_flags(check);

  std::vector<std::string> generators;
  auto* algebra = app.add_subcommand("algebra", "Close and classify a set of symmetries");
  algebra->add_option("symmetries", generators, "Operators; @free adds the free generators")->required();
  shared_flags(algebra);

  std::string transformation, target;
  auto* transform = app.add_subcommand("transform", "Apply an equivalence transformation");
  transform->add_option("transformation", transformation, "gauge:chi, mobius:nu,mu,lambda, oscillator:w, freefall:k")
      ->required();
  transform->add_option("target", target, "L_free, a catalog item, a potential spec, or an operator")->required();
  transform->add_option("--catalog", s.catalog_path, "Catalog file");
  shared_flags(transform);

  auto* worked = app.add_subcommand("worked-examples", "Verify the worked examples");
  shared_flags(worked);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      return emit(cmd_verify_table(load_catalog(catalog_path(s)), selectors, options(s)), s);
    }
    if (*check) {
      std::optional<OracleConfig> cfg;
      if (s.oracle) cfg = options(s).oracle_config;
      return emit(cmd_check(potential, symmetry, cfg), s);
    }
    if (*algebra) return emit(cmd_algebra(generators), s);
    if (*transform) {
      std::vector<TableEntry> catalog;
      if (std::regex_match(target, std::regex(R"(T?\d+\.\d+)"))) catalog = load_catalog(catalog_path(s));
      return emit(cmd_transform(catalog, transformation, target), s);
    }
    return emit(cmd_worked_examples(), s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
