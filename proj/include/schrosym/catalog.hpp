#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schrosym/diffop.hpp"
#include "schrosym/liealg.hpp"

namespace schrosym {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One reading of a table row: field strings, symmetry strings, claimed label.
struct Reading {
  std::string A1 = "0", A2 = "0", A0 = "0";
  std::vector<std::string> symmetries;
  std::string algebra;
};

/// Parameter specialization with its own claimed label.
struct Branch {
  std::string condition;
  std::map<std::string, std::string> bindings;
  std::string algebra;
};

struct TableEntry {
  std::string id;  // "T<table>.<item>"
  int table = 0, item = 0;
  Reading printed;
  std::optional<Reading> corrected;   // typo-level repair of the printed row
  std::string correction_reason;
  std::optional<Reading> restricted;  // a narrower potential that does admit the claims
  std::string restriction_reason;
  bool star = false;       // equivalent under the Mobius-type maps
  bool blackstar = false;  // equivalent under the free-fall map
  std::vector<Branch> branches;
  std::vector<std::string> notes;
  std::string e = "1", g = "1";
};

/// Throws CatalogError naming the entry on schema violations.
std::vector<TableEntry> load_catalog(const std::string& path);
std::vector<TableEntry> parse_catalog(const std::string& json_text);
/// The shipped catalog in the repository data directory.
std::string default_catalog_path();

struct SymmetryVerdict {
  std::string symmetry;
  Decision decision = Decision::Unknown;
  std::string alpha;
  std::string detail;  // first failing coefficient when not Zero
};

/// Verification of one reading, optionally under parameter bindings.
struct ReadingReport {
  std::string condition = "generic";
  std::vector<SymmetryVerdict> symmetries;
  bool closed = false;
  std::string closure_failure;
  std::vector<std::string> basis;
  Fingerprint fingerprint;
  std::vector<std::string> candidates;
  std::string claimed;
  LabelMatch label;

  bool symmetries_hold() const;
};

enum class EntryStatus { Verified, Quarantined, Failed, Indeterminate };
const char* status_name(EntryStatus s);

struct VerificationReport {
  std::string id;
  EntryStatus status = EntryStatus::Indeterminate;
  ReadingReport printed;
  std::optional<ReadingReport> corrected;
  std::optional<ReadingReport> restricted;  // informational; never upgrades the status
  std::vector<ReadingReport> branches;      // run on the first reading whose symmetries hold
  std::vector<std::string> annotations;
};

Potential reading_potential(const Reading& r, const std::string& e, const std::string& g,
                            const std::map<std::string, std::string>& bindings = {});
ReadingReport verify_reading(const Reading& r, const std::string& e, const std::string& g,
                             const std::map<std::string, std::string>& bindings = {},
                             const std::string& condition = "generic");
VerificationReport verify_entry(const TableEntry& entry);
/// Entries verified independently on up to `jobs` threads; order preserved.
std::vector<VerificationReport> verify_catalog(const std::vector<TableEntry>& entries, unsigned jobs = 1);

/// Replaces function symbols and parameters by closed forms. A function body
/// names its k-th argument by the k-th space coordinate (x1, x2, x3).
Potential instantiate(const TableEntry& entry, const std::map<std::string, std::string>& functions,
                      const std::map<std::string, std::string>& parameters = {}, bool use_corrected = true);
/// The listed symmetries of the same reading under the same substitutions.
std::vector<DiffOperator> instantiate_symmetries(const TableEntry& entry,
                                                 const std::map<std::string, std::string>& functions,
                                                 const std::map<std::string, std::string>& parameters = {},
                                                 bool use_corrected = true);

/// Intermediate results of the worked derivations, each a potential together
/// with the symmetries it was derived to admit.
struct WorkedExample {
  std::string id;
  std::string description;
  Reading reading;
  std::optional<Reading> corrected;
  std::string correction_reason;
  std::optional<Reading> restricted;
  std::string restriction_reason;
};
std::vector<WorkedExample> worked_examples();
std::vector<VerificationReport> worked_example_suite();

std::string report_json(const VerificationReport& r, int indent = -1);
std::string report_text(const VerificationReport& r);

}  // namespace schrosym
