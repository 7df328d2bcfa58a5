#pragma once
// The line-oriented model description read by the command-line harness.
//
//   # comment
//   GENERATORS
//     x1 0            name, degree, optional weight=<w> (default 1)
//     xi1 1
//   MODEL builtin polyvector n=3   instead of GENERATORS; defines D and d
//   OPERATOR Delta
//     term 1 mult 0 0 deriv 1 1     coefficient, multiplier and derivative exponents
//     named -1/2 x1^2*xi2 d x1 xi1  the same by generator names (word 1 = unit)
//     add -1/2 D                    adds a multiple of an earlier operator
//   SUITE linfty [label]
//     operator Delta
//     budget-degree 3
//
// Every error carries the 1-based line and column of the offending token.

#include "bvk/budget.hpp"
#include "bvk/diffop.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvk {

class SpecError : public std::runtime_error {
 public:
  SpecError(std::size_t line, std::size_t column, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }
  /// The message without the "line:col: " prefix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Suite kinds understood by run_suite, in canonical order.
const std::vector<std::string>& suite_kinds();

struct SuiteSpec {
  std::string kind;
  std::string label;  // defaults to the kind
  std::string op = "D";
  std::optional<std::string> differential;
  std::optional<std::uint32_t> budget_degree;
  std::optional<std::size_t> budget_tuples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_arity;  // brackets (default 5), linfty (default 4)
  std::optional<unsigned> order;      // bv-core claimed order (default 2)
  std::optional<int> window_min;
  std::optional<int> window_max;
  std::optional<int> cap_weight;
  std::string bracket = "bv";  // gerstenhaber: bv | schouten
  std::size_t line = 0;
};

struct NamedOperator {
  std::string name;
  Operator op;
};

struct ModelSpec {
  TablePtr table;
  std::vector<int> weights;
  /// "custom" for GENERATORS, otherwise the builtin name with its parameters.
  std::string source = "custom";
  std::vector<NamedOperator> operators;
  std::vector<SuiteSpec> suites;

  [[nodiscard]] const Operator* find_operator(const std::string& name) const;
};

ModelSpec parse_spec(const std::string& text);
ModelSpec parse_spec_file(const std::string& path);

/// Parses lines in the format produced by to_term_lines back into an operator.
Operator parse_operator_lines(const TablePtr& table, const std::vector<std::string>& lines);

}  // namespace bvk
