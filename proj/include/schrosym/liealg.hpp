#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schrosym/diffop.hpp"

namespace schrosym {

enum class SpanStatus { InSpan, NotInSpan, Unknown };

struct SpanResult {
  SpanStatus status = SpanStatus::NotInSpan;
  std::vector<Expr> coefficients;  // constants, one per basis element
};

/// Solves op = sum c_k basis_k for constants c_k (parameters allowed) by
/// equating coefficients of independent coordinate monomials, then verifies
/// the solution with the zero test.
SpanResult span_express(const DiffOperator& op, const std::vector<DiffOperator>& basis);

/// c[i][j] holds the coordinates of [e_i, e_j] in the basis.
struct StructureConstants {
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<Expr>>> c;

  std::size_t dim() const { return labels.size(); }
  std::vector<Expr> bracket(const std::vector<Expr>& u, const std::vector<Expr>& v) const;
  /// Builds from a relation list; unspecified brackets are zero.
  /// Each relation: (i, j, vector of coefficients); [e_j, e_i] is filled by antisymmetry.
  static StructureConstants from_relations(std::vector<std::string> labels,
                                           const std::vector<std::tuple<int, int, std::vector<Expr>>>& rel);
  /// Throws std::logic_error when antisymmetry or Jacobi fails.
  void check_identities() const;
  StructureConstants substitute(const Bindings& b) const;
  std::vector<std::string> parameters() const;
};

StructureConstants direct_sum(const StructureConstants& a, const StructureConstants& b);

struct ClosureResult {
  bool closed = false;
  std::vector<DiffOperator> basis;
  StructureConstants constants;
  std::string failure;  // offending commutator when not closed
};

/// Adjoins commutators outside the span until closed or max_dim is exceeded.
ClosureResult close_algebra(const std::vector<DiffOperator>& gens, const std::vector<std::string>& labels,
                            std::size_t max_dim = 16);

struct Fingerprint {
  std::size_t dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  std::vector<std::size_t> derived_series;    // dims, starting with dim, until stable
  std::vector<std::size_t> lower_central;     // dims, starting with dim, until stable
  std::size_t center_dim = 0;
  std::size_t killing_rank = 0;

  bool operator==(const Fingerprint& o) const;
  std::string to_string() const;
};

/// Invariants of one parameter stratum.
struct Stratum {
  std::string condition;  // "generic" or e.g. "kappa=0"
  Fingerprint fingerprint;
};

struct AlgebraReport {
  Fingerprint generic;
  std::vector<Stratum> strata;           // strata whose invariants differ from the generic one
  std::vector<std::string> singular;     // conditions where the generic constants blow up
  std::vector<std::string> candidates;   // registry names matching the generic invariants
};

Fingerprint fingerprint(const StructureConstants& sc);
AlgebraReport analyze(const StructureConstants& sc);

enum class LabelVerdict { Match, Mismatch, Indeterminate };
const char* verdict_name(LabelVerdict v);

struct LabelMatch {
  LabelVerdict verdict = LabelVerdict::Indeterminate;
  bool coarse = false;  // only dimension, solvability and nilpotency compared
  std::string note;
};

/// Labels such as "n_{3,1}", "3n_{1,1}", "sl(2,R)+so(3)+n_{1,1}", "s_{7,1}".
LabelMatch match_label(const std::string& label, const Fingerprint& fp);

/// Known structure constants by name; nullopt for coarse-only or unknown names.
std::optional<StructureConstants> registry_algebra(const std::string& name);
std::vector<std::string> registry_names();

}  // namespace schrosym
