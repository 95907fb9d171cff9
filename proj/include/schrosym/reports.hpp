#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrosym/catalog.hpp"
#include "schrosym/numoracle.hpp"

namespace schrosym {

/// Bad command arguments: selectors, potential specs, target kinds.
class CommandError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kReportSchema = "schrosym-report/1";

/// One command invocation: a self-describing document and a human summary.
struct CommandReport {
  nlohmann::json document;  // {"schema", "command", "results", "exit_status"}
  std::string summary;
  int exit_status = 0;
};

/// "free", "V=<expr>" or ';'-separated assignments of A1, A2, A0, V, e, g.
/// A0 and V are exclusive; missing components are zero.
Potential parse_potential_spec(const std::string& spec);

/// "1" selects Table 1, "1.8" or "T1.8" one item. Empty selects everything.
std::vector<TableEntry> select_entries(const std::vector<TableEntry>& catalog,
                                       const std::vector<std::string>& selectors);

struct OracleCheck {
  std::string symmetry;
  Decision symbolic = Decision::Unknown;
  std::optional<ResidualReport> residual;  // empty when the oracle refused
  std::string refusal;
  std::optional<double> refined_fd;  // fd at halved spacings, run when a Zero misses the tolerance
  bool agrees = true;
};

/// Zero agrees when fd < tol, or when halving the spacings shrinks fd by at
/// least 0.6 * 2^order (pure truncation error). NonZero agrees when fd > 10 tol.
OracleCheck oracle_check(const Potential& p, const std::string& symmetry, const OracleConfig& cfg);

/// Cross-checks every symmetry of a reading with the finite-difference oracle.
std::vector<OracleCheck> oracle_cross_check(const Reading& r, const std::string& e, const std::string& g,
                                            const OracleConfig& cfg);

struct VerifyOptions {
  bool oracle = false;
  OracleConfig oracle_config;
  unsigned jobs = 1;
};

/// Exit status 1 iff some selected entry failed or the oracle disagrees.
CommandReport cmd_verify_table(const std::vector<TableEntry>& catalog, const std::vector<std::string>& selectors,
                               const VerifyOptions& opt);
/// Symmetry check with alpha and the determining equations left nonzero.
CommandReport cmd_check(const std::string& potential_spec, const std::string& symmetry_spec,
                        const std::optional<OracleConfig>& oracle = std::nullopt);
/// Closure, structure constants, fingerprint and registry candidates.
/// "@free" expands to the thirteen free-equation generators.
CommandReport cmd_algebra(const std::vector<std::string>& symmetry_specs);
/// Target: "L_free", a catalog item, a potential spec (contains '='), or an operator.
/// Operators are also matched against the named generators as constant multiples.
CommandReport cmd_transform(const std::vector<TableEntry>& catalog, const std::string& transformation_spec,
                            const std::string& target);
CommandReport cmd_worked_examples();

}  // namespace schrosym
