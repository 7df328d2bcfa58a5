// Command-line front end. Talks to the library only through bvk.h.

#include "bvk/bvk.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 4;

struct Flags {
  std::string spec;
  std::vector<std::string> suites;
  std::int64_t budget_degree = -1;
  std::int64_t budget_tuples = -1;
  std::int64_t seed = -1;
  std::string format = "human";
  std::string out;
  std::string op = "D";
  std::string differential = "d";
  std::vector<int> window{0, 3};
  std::vector<std::string> args;
};

struct SessionDeleter {
  void operator()(bvk_session* s) const { bvk_session_free(s); }
};
using Session = std::unique_ptr<bvk_session, SessionDeleter>;

struct StringDeleter {
  void operator()(char* s) const { bvk_string_free(s); }
};
using Owned = std::unique_ptr<char, StringDeleter>;

int fail(bvk_status st) {
  std::cerr << "bvk: " << bvk_last_error() << "\n";
  return st == BVK_ERR_INTERNAL ? kExitInternal : kExitUsage;
}

bvk_options options_of(const Flags& f, const std::string& suites) {
  bvk_options o = bvk_default_options();
  o.budget_degree = f.budget_degree;
  o.budget_tuples = f.budget_tuples;
  o.seed = f.seed;
  o.suites = suites.empty() ? nullptr : suites.c_str();
  o.format = f.format == "json" ? BVK_FORMAT_JSON : BVK_FORMAT_HUMAN;
  return o;
}

int emit(const Flags& f, const char* text) {
  if (f.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream file(f.out, std::ios::binary);
  file << text;
  if (!file) {
    std::cerr << "bvk: cannot write '" << f.out << "'\n";
    return kExitUsage;
  }
  return 0;
}

int open_session(const Flags& f, Session& session) {
  if (f.spec.empty()) {
    std::cerr << "bvk: --spec is required\n";
    return kExitUsage;
  }
  bvk_session* raw = nullptr;
  const bvk_status st = bvk_session_from_file(f.spec.c_str(), &raw);
  if (st != BVK_OK) return fail(st);
  session.reset(raw);
  return 0;
}

int cmd_check(const Flags& f) {
  Session s;
  if (const int rc = open_session(f, s); rc != 0) return rc;
  std::string suites;
  for (const auto& n : f.suites) suites += (suites.empty() ? "" : ",") + n;
  const bvk_options o = options_of(f, suites);
  char* raw = nullptr;
  int status = 0;
  const bvk_status st = bvk_run(s.get(), &o, &raw, &status);
  if (st != BVK_OK) return fail(st);
  Owned text(raw);
  if (const int rc = emit(f, text.get()); rc != 0) return rc;
  return status;
}

int cmd_brackets(const Flags& f) {
  Session s;
  if (const int rc = open_session(f, s); rc != 0) return rc;
  std::vector<const char*> argv;
  for (const auto& a : f.args) argv.push_back(a.c_str());
  const bvk_options o = options_of(f, "");
  char* raw = nullptr;
  const bvk_status st = bvk_brackets(s.get(), f.op.c_str(), argv.data(), argv.size(), &o, &raw);
  if (st != BVK_OK) return fail(st);
  Owned text(raw);
  return emit(f, text.get());
}

int cmd_split(const Flags& f) {
  Session s;
  if (const int rc = open_session(f, s); rc != 0) return rc;
  const bvk_options o = options_of(f, "");
  char* raw = nullptr;
  const bvk_status st = bvk_split(s.get(), f.op.c_str(), &o, &raw);
  if (st != BVK_OK) return fail(st);
  Owned text(raw);
  return emit(f, text.get());
}

int cmd_cohomology(const Flags& f) {
  Session s;
  if (const int rc = open_session(f, s); rc != 0) return rc;
  const bvk_options o = options_of(f, "");
  char* raw = nullptr;
  const bvk_status st = bvk_cohomology(s.get(), f.differential.c_str(), f.window[0], f.window[1], &o, &raw);
  if (st != BVK_OK) return fail(st);
  Owned text(raw);
  return emit(f, text.get());
}

int cmd_explain(const Flags& f) {
  char* raw = nullptr;
  const bvk_status st = bvk_explain(&raw);
  if (st != BVK_OK) return fail(st);
  Owned text(raw);
  return emit(f, text.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of BV and L-infinity structures on graded-commutative models"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub, bool with_spec) {
    if (with_spec) sub->add_option("--spec", f.spec, "Model spec file")->required();
    sub->add_option("--budget-degree", f.budget_degree, "Largest total exponent of enumerated monomials")
        ->check(CLI::Range(0, 64));
    sub->add_option("--budget-tuples", f.budget_tuples, "Largest number of argument tuples per check")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", f.seed, "Seed for sampled tuples")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--out", f.out, "Write the output to this file");
  };

  auto* check = app.add_subcommand("check", "Run check suites and print the report");
  common(check, true);
  check->add_option("--suite", f.suites, "Suite label or kind (repeatable)");

  auto* brackets = app.add_subcommand("brackets", "Print F^k of an operator on the given elements");
  common(brackets, true);
  brackets->add_option("--op", f.op, "Operator name")->capture_default_str();
  brackets->add_option("args", f.args, "Arguments such as x1*xi2 or '1/2*x1 - xi1'")->required();

  auto* split = app.add_subcommand("split", "Degree and order split of a square-zero operator");
  common(split, true);
  split->add_option("--op", f.op, "Operator name")->capture_default_str();

  auto* coh = app.add_subcommand("cohomology", "Slice dimensions of H(A, d)");
  common(coh, true);
  coh->add_option("--differential", f.differential, "Differential operator name")->capture_default_str();
  coh->add_option("--window", f.window, "Weight window MIN MAX")->expected(2)->capture_default_str();

  auto* explain = app.add_subcommand("explain", "Print the sign conventions");
  common(explain, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (coh->parsed() && f.window[0] > f.window[1]) {
    std::cerr << "bvk: window maximum is below the minimum\n";
    return kExitUsage;
  }
  if (check->parsed()) return cmd_check(f);
  if (brackets->parsed()) return cmd_brackets(f);
  if (split->parsed()) return cmd_split(f);
  if (coh->parsed()) return cmd_cohomology(f);
  return cmd_explain(f);
}
