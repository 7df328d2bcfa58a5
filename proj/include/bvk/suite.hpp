#pragma once
// Runs the named check suites of a ModelSpec and renders the result as text
// or as versioned JSON ("bvk-report/1").

#include "bvk/spec.hpp"
#include "bvk/structures.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bvk {

inline constexpr const char* kReportFormat = "bvk-report/1";

/// Command-line overrides; unset fields fall back to the suite block, then to
/// the defaults of Budget (degree 2, 500 tuples, seed 1).
struct RunOptions {
  std::optional<std::uint32_t> budget_degree;
  std::optional<std::size_t> budget_tuples;
  std::optional<std::uint64_t> seed;
  /// Suite labels or kinds to run. Empty runs every SUITE block of the spec; a
  /// kind without a block runs with default settings on operator D.
  std::vector<std::string> suites;
};

struct SuiteResult {
  std::string label;
  std::string kind;
  std::string op;
  std::optional<std::string> differential;
  Budget budget;
  Report report;
  /// Informational key/value pairs (certified order, cohomology dimensions).
  std::vector<std::pair<std::string, std::string>> facts;
};

struct SuiteReport {
  TablePtr table;
  std::string source;
  std::vector<SuiteResult> suites;

  [[nodiscard]] std::size_t count(Verdict v) const;
  /// 0 all pass, 1 some failure, 3 untested entries and no failure.
  [[nodiscard]] int exit_status() const;
};

/// Throws DomainError for a selection naming neither a label nor a kind.
SuiteReport run_suite(const ModelSpec& spec, const RunOptions& options = {});

std::string render_human(const SuiteReport& report);
/// Deterministic: equal inputs give byte-identical output.
std::string render_json(const SuiteReport& report);

}  // namespace bvk
