#include "bvk/models.hpp"
#include "bvk/suite.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace bvk;
using namespace bvk::test;

namespace {

const char* kPerturbed = R"(GENERATORS
  x1 0
  x2 0
  xi1 1
  xi2 1
OPERATOR Delta
  named 1 1 d x1 xi1
  named 1 1 d x2 xi2
OPERATOR P
  add 1 Delta
  named 1 xi1
SUITE linfty
  operator P
  max-arity 2
SUITE bv-core
  operator P
SUITE bvinfty tail
  operator P
)";

std::string dump(const SuiteReport& r) { return render_human(r); }

const CheckEntry* find(const SuiteReport& r, const std::string& suite, const std::string& check) {
  for (const auto& s : r.suites) {
    if (s.label == suite) return s.report.find(check);
  }
  return nullptr;
}

// Every witness, residual and operator residual in the JSON re-parses to the
// value held in the in-memory report.
void expect_round_trip(const SuiteReport& r) {
  const auto j = nlohmann::json::parse(render_json(r));
  ASSERT_EQ(j["suites"].size(), r.suites.size());
  std::size_t checked = 0;
  for (std::size_t si = 0; si < r.suites.size(); ++si) {
    const auto& entries = r.suites[si].report.entries;
    const auto& js = j["suites"][si]["checks"];
    ASSERT_EQ(js.size(), entries.size());
    for (std::size_t ei = 0; ei < entries.size(); ++ei) {
      const auto& e = entries[ei];
      const auto& je = js[ei];
      EXPECT_EQ(je["name"], e.name);
      EXPECT_EQ(je["verdict"], to_string(e.verdict));
      ASSERT_EQ(je.contains("witness"), e.witness.has_value());
      if (e.witness) {
        ASSERT_EQ(je["witness"].size(), e.witness->size());
        for (std::size_t k = 0; k < e.witness->size(); ++k) {
          EXPECT_EQ(parse_element(r.table, je["witness"][k].get<std::string>()), (*e.witness)[k]);
          ++checked;
        }
      }
      ASSERT_EQ(je.contains("residual"), e.residual.has_value());
      if (e.residual) {
        EXPECT_EQ(parse_element(r.table, je["residual"].get<std::string>()), *e.residual);
        ++checked;
      }
      ASSERT_EQ(je.contains("operator_residual"), e.operator_residual.has_value());
      if (e.operator_residual) {
        EXPECT_EQ(parse_operator_lines(r.table, je["operator_residual"].get<std::vector<std::string>>()),
                  *e.operator_residual);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

}  // namespace

TEST(SuiteRun, PolyvectorBvCorePasses) {
  const auto spec = parse_spec("MODEL builtin polyvector n=3\nSUITE bv-core\n  budget-degree 3\n");
  const SuiteReport r = run_suite(spec);
  EXPECT_EQ(r.exit_status(), 0) << dump(r);
  ASSERT_EQ(r.suites.size(), 1u);
  const auto* order = r.suites[0].report.find("order<=2");
  ASSERT_NE(order, nullptr);
  EXPECT_GE(order->tested, 200u);
  const auto* exact = r.suites[0].report.find("order-exact");
  ASSERT_NE(exact, nullptr);
  EXPECT_EQ(exact->verdict, Verdict::Pass);
  ASSERT_TRUE(exact->witness.has_value());
  EXPECT_FALSE(akman_bracket(*spec.find_operator("D"), *exact->witness).is_zero());
  EXPECT_EQ(r.suites[0].budget.max_degree, 3u);
}

TEST(SuiteRun, PerturbedLaplacianFailsFirstRelation) {
  const auto spec = parse_spec(kPerturbed);
  const SuiteReport r = run_suite(spec, RunOptions{std::nullopt, std::nullopt, std::nullopt, {"linfty"}});
  EXPECT_EQ(r.exit_status(), 1);
  const auto* n1 = find(r, "linfty", "relation n=1");
  ASSERT_NE(n1, nullptr);
  EXPECT_EQ(n1->verdict, Verdict::Fail);
  ASSERT_TRUE(n1->witness.has_value());
  ASSERT_EQ(n1->witness->size(), 1u);
  const Operator& P = *spec.find_operator("P");
  EXPECT_FALSE(apply(P, apply(P, (*n1->witness)[0])).is_zero());
}

TEST(SuiteRun, EmptySelectionIsAnEmptyPassingReport) {
  const auto spec = parse_spec("MODEL builtin mixed\n");
  const SuiteReport r = run_suite(spec);
  EXPECT_TRUE(r.suites.empty());
  EXPECT_EQ(r.exit_status(), 0);
  const auto j = nlohmann::json::parse(render_json(r));
  EXPECT_EQ(j["format"], "bvk-report/1");
  EXPECT_TRUE(j["suites"].empty());
  EXPECT_EQ(j["summary"]["exit_status"], 0);
}

TEST(SuiteRun, ExhaustedBudgetIsUntestedNotFailed) {
  const auto spec = parse_spec("MODEL builtin polyvector n=2\nSUITE linfty\n  budget-tuples 0\n");
  const SuiteReport r = run_suite(spec);
  EXPECT_EQ(r.count(Verdict::Fail), 0u);
  EXPECT_GT(r.count(Verdict::Untested), 0u);
  EXPECT_EQ(r.exit_status(), 3);
}

TEST(SuiteRun, SelectionAndOverrides) {
  const auto spec = parse_spec(R"(MODEL builtin mixed
SUITE linfty small
  budget-degree 1
  seed 4
SUITE split
)");
  RunOptions o;
  o.suites = {"small", "derivation", "split"};
  o.budget_tuples = 120;
  const SuiteReport r = run_suite(spec, o);
  ASSERT_EQ(r.suites.size(), 3u);
  EXPECT_EQ(r.suites[0].label, "small");
  EXPECT_EQ(r.suites[0].budget.max_degree, 1u);
  EXPECT_EQ(r.suites[0].budget.seed, 4u);
  EXPECT_EQ(r.suites[0].budget.max_tuples, 120u);
  EXPECT_EQ(r.suites[1].kind, "derivation");  // no block: defaults on D
  EXPECT_EQ(r.suites[1].budget.max_degree, 2u);
  EXPECT_EQ(r.exit_status(), 0) << dump(r);

  o.seed = 77;
  o.budget_degree = 3;
  const SuiteReport r2 = run_suite(spec, o);
  EXPECT_EQ(r2.suites[0].budget.seed, 77u);
  EXPECT_EQ(r2.suites[0].budget.max_degree, 3u);

  o.suites = {"nope"};
  EXPECT_THROW(run_suite(spec, o), DomainError);
}

TEST(SuiteRun, EveryKindPassesOnTheMixedModel) {
  std::string text = "MODEL builtin mixed\n";
  for (const auto& k : suite_kinds()) text += "SUITE " + k + "\n  budget-tuples 150\n";
  const SuiteReport r = run_suite(parse_spec(text));
  ASSERT_EQ(r.suites.size(), suite_kinds().size());
  EXPECT_EQ(r.exit_status(), 0) << dump(r);
  EXPECT_GT(r.count(Verdict::Pass), 40u);
}

TEST(SuiteRun, KoszulCohomologyFacts) {
  const auto spec = parse_spec("MODEL builtin koszul m=2 laplacian=1\nSUITE cohomology\n");
  const SuiteReport r = run_suite(spec);
  EXPECT_EQ(r.exit_status(), 0) << dump(r);
  const auto& facts = r.suites[0].facts;
  const auto it = std::find_if(facts.begin(), facts.end(), [](const auto& f) { return f.first == "dimensions"; });
  ASSERT_NE(it, facts.end());
  EXPECT_EQ(it->second, "(0,0):1 (2,1):1");
}

TEST(SuiteRun, HypothesisFailuresBecomeEntries) {
  // split needs a square-zero operator
  const auto spec = parse_spec(std::string(kPerturbed) + "SUITE split s\n  operator P\n");
  RunOptions o;
  o.suites = {"s"};
  const SuiteReport r = run_suite(spec, o);
  const auto* h = find(r, "s", "hypotheses");
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(h->verdict, Verdict::Fail);
  EXPECT_EQ(r.exit_status(), 1);
}

TEST(SuiteReportFormat, DeterministicJson) {
  RunOptions o;
  o.seed = 5;
  const std::string a = render_json(run_suite(parse_spec(kPerturbed), o));
  const std::string b = render_json(run_suite(parse_spec(kPerturbed), o));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["format"], kReportFormat);
  for (const auto& s : j["suites"]) EXPECT_EQ(s["budget"]["seed"], 5);

  // sampled checks depend on the seed, and the seed is recorded
  const auto spec = parse_spec("MODEL builtin polyvector n=2\nSUITE brackets\n  budget-tuples 40\n");
  o.seed = 6;
  const std::string c = render_json(run_suite(spec, o));
  EXPECT_EQ(c, render_json(run_suite(spec, o)));
  EXPECT_NE(c.find("\"seed\": 6"), std::string::npos);
}

TEST(SuiteReportFormat, WitnessesRoundTrip) {
  const auto spec = parse_spec(kPerturbed);
  const SuiteReport r = run_suite(spec);
  EXPECT_EQ(r.exit_status(), 1);
  const auto* tail = find(r, "tail", "D-square-zero");
  ASSERT_NE(tail, nullptr);
  EXPECT_TRUE(tail->operator_residual.has_value());
  expect_round_trip(r);

  // witnesses with rational coefficients and odd generators
  const auto spec2 = parse_spec(R"(GENERATORS
  x 0
  y 2
  xi 1
  eta 1
OPERATOR D
  named -3/2 x*eta d xi
  named 5/7 xi*eta d y
  named 1 1 d x xi
SUITE bv-core
SUITE linfty
  max-arity 2
)");
  const SuiteReport r2 = run_suite(spec2);
  EXPECT_EQ(r2.exit_status(), 1);
  expect_round_trip(r2);
}

TEST(SuiteReportFormat, HumanLines) {
  const SuiteReport r = run_suite(parse_spec(kPerturbed));
  const std::string text = render_human(r);
  EXPECT_NE(text.find("[FAIL] linfty/relation n=1"), std::string::npos) << text;
  EXPECT_NE(text.find("    witness: "), std::string::npos);
  EXPECT_NE(text.find("summary: "), std::string::npos);
}
