#include "bvk/suite.hpp"

#include "bvk/linfty.hpp"
#include "bvk/models.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace bvk {

namespace {

using Json = nlohmann::ordered_json;

CheckEntry make_entry(std::string name, Verdict v, std::size_t tested, std::string detail) {
  CheckEntry e;
  e.name = std::move(name);
  e.verdict = v;
  e.tested = tested;
  e.detail = std::move(detail);
  return e;
}

std::string coverage(std::size_t tested, std::size_t candidates, bool exhaustive) {
  std::ostringstream os;
  os << tested << " of " << candidates << (exhaustive ? " (exhaustive)" : " (sampled)");
  return os.str();
}

Budget resolve_budget(const SuiteSpec& s, const RunOptions& o) {
  Budget b;
  if (s.budget_degree) b.max_degree = *s.budget_degree;
  if (s.budget_tuples) b.max_tuples = *s.budget_tuples;
  if (s.seed) b.seed = *s.seed;
  if (o.budget_degree) b.max_degree = *o.budget_degree;
  if (o.budget_tuples) b.max_tuples = *o.budget_tuples;
  if (o.seed) b.seed = *o.seed;
  return b;
}

CheckEntry order_entry(const std::string& name, const OrderCertificate& c) {
  CheckEntry e = make_entry(name, c.passed ? Verdict::Pass : Verdict::Fail, c.tuples_tested,
                            "tuples " + coverage(c.tuples_tested, c.candidates, c.exhaustive));
  if (c.normalized) e.detail += ", certified for D - D(1)";
  if (!c.passed) {
    e.witness = c.failure_witness;
    e.residual = c.failure_value;
    e.detail = "nonzero bracket of arity " + std::to_string(c.claimed_order + 1) + "; " + e.detail;
  } else if (c.tuples_tested == 0) {
    e.verdict = Verdict::Untested;
    e.detail = "no tuples within budget";
  }
  return e;
}

CheckEntry sharpness_entry(const std::string& name, const OrderCertificate& c) {
  if (c.sharp) {
    CheckEntry e = make_entry(name, Verdict::Pass, c.sharpness_tested,
                              "order exactly " + std::to_string(c.claimed_order) + ": nonzero bracket of arity " +
                                  std::to_string(c.claimed_order) + " found");
    e.witness = c.sharpness_witness;
    return e;
  }
  return make_entry(name, Verdict::Untested, c.sharpness_tested,
                    "no nonzero bracket of arity " + std::to_string(c.claimed_order) + " within budget");
}

struct Context {
  const ModelSpec& spec;
  const Operator& D;
  Operator d;
  Budget budget;
  const SuiteSpec& s;
  SuiteResult& out;
};

void suite_bv_core(Context& c) {
  auto& rep = c.out.report;
  const unsigned k = c.s.order.value_or(2);
  const bool odd = is_odd(c.D);
  rep.entries.push_back(make_entry("odd", odd ? Verdict::Pass : Verdict::Fail, 1,
                                   odd ? "every term has odd degree" : "D is not odd"));
  const auto sq = is_square_zero(c.D);
  CheckEntry sqe = make_entry("square-zero", sq.square_zero ? Verdict::Pass : Verdict::Fail, 1,
                              sq.square_zero ? "D^2 = 0 in normal form" : "D^2 != 0");
  if (!sq.square_zero) {
    sqe.operator_residual = sq.square;
    if (sq.witness) sqe.witness = std::vector<Element>{Element::monomial(c.D.table(), *sq.witness)};
  }
  rep.entries.push_back(std::move(sqe));
  const auto cert = akman_order_check(c.D, k, c.budget);
  rep.entries.push_back(order_entry("order<=" + std::to_string(k), cert));
  if (cert.passed) {
    const auto exact = cert.sharp ? cert : akman_order(c.D, k, c.budget);
    rep.entries.push_back(sharpness_entry("order-exact", exact));
    c.out.facts.emplace_back("certified-order", std::to_string(exact.claimed_order));
  }
  c.out.facts.emplace_back("structural-order", std::to_string(structural_order(c.D).order));

  if (!odd || !sq.square_zero || !cert.passed || k > 2) {
    for (const char* n : {"antisymmetry", "jacobi", "leibniz"}) {
      rep.entries.push_back(make_entry(std::string("gerstenhaber/") + n, Verdict::Untested, 0,
                                       "skipped: D is not an odd square-zero operator of order <= 2"));
    }
    return;
  }
  GerstenhaberOps ops;
  const Operator D = c.D;
  ops.bracket = [D](const Element& a, const Element& b) { return bv_bracket(D, a, b); };
  ops.product = [](const Element& a, const Element& b) { return a * b; };
  rep.append(check_gerstenhaber(ops, monomial_pool(c.D.table(), c.budget.max_degree), c.budget), "gerstenhaber/");
}

void suite_brackets(Context& c) {
  const unsigned kmax = c.s.max_arity.value_or(5);
  const auto pool = monomial_pool(c.D.table(), c.budget.max_degree);
  for (unsigned k = 1; k <= kmax; ++k) {
    const auto sel = select_tuples(pool.size(), k, c.budget, TupleMode::Ordered);
    CheckEntry e = make_entry("akman=koszul k=" + std::to_string(k), Verdict::Pass, 0, "");
    for (const auto& idx : sel.tuples) {
      std::vector<Element> args;
      for (auto i : idx) args.push_back(pool[i]);
      ++e.tested;
      const Element diff = akman_bracket(c.D, args) - koszul_bracket(c.D, args);
      if (!diff.is_zero()) {
        e.verdict = Verdict::Fail;
        e.witness = args;
        e.residual = diff;
        break;
      }
    }
    e.detail = "tuples " + coverage(e.tested, sel.candidates, sel.exhaustive);
    if (e.tested == 0) e.verdict = Verdict::Untested;
    c.out.report.entries.push_back(std::move(e));
  }
  const TablePtr& t = c.D.table();
  if (!has_polyvector_layout(*t) || !(c.D == divergence_operator(t))) return;
  Model pv{"polyvector", t, c.D, Operator(t), c.spec.weights};
  const int sign = calibrate_schouten_sign(pv);
  c.out.facts.emplace_back("schouten-sign", std::to_string(sign));
  const auto sel = select_tuples(pool.size(), 2, c.budget, TupleMode::Ordered);
  CheckEntry e = make_entry("bv=schouten", Verdict::Pass, 0, "");
  for (const auto& idx : sel.tuples) {
    const Element& a = pool[idx[0]];
    const Element& b = pool[idx[1]];
    ++e.tested;
    const Element s = schouten_oracle(a, b);
    const Element diff = bv_bracket(c.D, a, b) - (sign > 0 ? s : -s);
    if (!diff.is_zero()) {
      e.verdict = Verdict::Fail;
      e.witness = std::vector<Element>{a, b};
      e.residual = diff;
      break;
    }
  }
  e.detail = "pairs " + coverage(e.tested, sel.candidates, sel.exhaustive) + ", sign " + std::to_string(sign);
  if (e.tested == 0) e.verdict = Verdict::Untested;
  c.out.report.entries.push_back(std::move(e));
}

void suite_linfty(Context& c) {
  const unsigned nmax = c.s.max_arity.value_or(4);
  for (const auto& r : verify_linfty(c.D, nmax, c.budget)) {
    CheckEntry e = make_entry("relation n=" + std::to_string(r.n), r.passed ? Verdict::Pass : Verdict::Fail,
                              r.tuples_tested, "tuples " + coverage(r.tuples_tested, r.candidates, r.exhaustive));
    if (!r.passed) {
      e.witness = r.witness;
      e.residual = r.residual;
    } else if (r.tuples_tested == 0) {
      e.verdict = Verdict::Untested;
    }
    c.out.report.entries.push_back(std::move(e));
  }
}

void suite_split(Context& c) {
  const SplitResult split = degree_split(c.D, c.budget);
  std::string comps;
  for (const auto& comp : split.components) {
    const std::string tag = "component n=" + std::to_string(comp.n);
    CheckEntry e = order_entry(tag + " order<=" + std::to_string(comp.n), comp.certificate);
    e.detail = "degree " + std::to_string(comp.degree) + ", " + e.detail;
    c.out.report.entries.push_back(std::move(e));
    comps += (comps.empty() ? "" : " ") + std::to_string(comp.n) + ":" + std::to_string(comp.degree) +
             (comp.certificate.sharp ? "" : "?");
  }
  c.out.facts.emplace_back("components", comps.empty() ? "none" : comps);
  CheckEntry res = make_entry("degrees 3-2n", split.residual ? Verdict::Fail : Verdict::Pass, 1,
                              split.residual ? "components outside degrees 3 - 2n" : "every component has degree 3 - 2n");
  if (split.residual) {
    Operator sum(c.D.table());
    for (const auto& [deg, op] : split.residual_components) sum += op;
    res.operator_residual = sum;
  }
  c.out.report.entries.push_back(std::move(res));
  c.out.report.append(split_identities(split));
}

Window window_of(const SuiteSpec& s) {
  Window w;
  if (s.window_min) w.min_weight = *s.window_min;
  if (s.window_max) w.max_weight = *s.window_max;
  w.cap_weight = s.cap_weight;
  return w;
}

void suite_cohomology(Context& c) {
  const Window w = window_of(c.s);
  const Cohomology h(c.d, c.spec.weights, w);
  std::string dims;
  for (const auto& [key, dim] : cohomology_dimensions(h)) {
    if (dim == 0) continue;
    dims += (dims.empty() ? "" : " ") + std::string("(") + std::to_string(key.degree) + "," +
            std::to_string(key.weight) + "):" + std::to_string(dim);
  }
  c.out.facts.emplace_back("window", std::to_string(w.min_weight) + ".." + std::to_string(w.max_weight));
  c.out.facts.emplace_back("dimensions", dims.empty() ? "none" : dims);
  const auto induced = induced_bv(c.d, c.D, c.spec.weights, w, c.budget);
  c.out.facts.emplace_back("induced-D2", to_string(induced.d2));
  c.out.report.append(induced.checks);
}

void suite_gerstenhaber(Context& c) {
  GerstenhaberOps ops;
  if (c.s.bracket == "schouten") {
    ops.bracket = schouten_oracle;
  } else {
    const Operator D = c.D;
    ops.bracket = [D](const Element& a, const Element& b) { return bv_bracket(D, a, b); };
  }
  ops.product = [](const Element& a, const Element& b) { return a * b; };
  c.out.report.append(check_gerstenhaber(ops, monomial_pool(c.D.table(), c.budget.max_degree), c.budget));
}

void run_one(const ModelSpec& spec, const SuiteSpec& s, SuiteResult& out) {
  const Operator& D = *spec.find_operator(s.op);
  Operator d(spec.table);
  if (s.differential) {
    d = *spec.find_operator(*s.differential);
    out.differential = s.differential;
  } else if (s.kind == "bvinfty" || s.kind == "cohomology") {
    if (const Operator* dd = spec.find_operator("d")) {
      d = *dd;
      out.differential = "d";
    } else {
      out.differential = "0";
    }
  }
  Context c{spec, D, d, out.budget, s, out};
  try {
    if (s.kind == "bv-core") {
      suite_bv_core(c);
    } else if (s.kind == "brackets") {
      suite_brackets(c);
    } else if (s.kind == "linfty") {
      suite_linfty(c);
    } else if (s.kind == "split") {
      suite_split(c);
    } else if (s.kind == "derivation") {
      out.report.append(check_derivation_lemma(D, c.budget));
    } else if (s.kind == "bvinfty") {
      out.report.append(check_bvinfty(d, D, c.budget));
    } else if (s.kind == "cohomology") {
      suite_cohomology(c);
    } else if (s.kind == "gerstenhaber") {
      suite_gerstenhaber(c);
    }
  } catch (const DomainError& e) {
    out.report.entries.push_back(make_entry("hypotheses", Verdict::Fail, 1, e.what()));
  }
}

Json json_elements(const std::vector<Element>& v) {
  Json arr = Json::array();
  for (const auto& a : v) arr.push_back(to_string(a));
  return arr;
}

}  // namespace

std::size_t SuiteReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& s : suites) {
    n += static_cast<std::size_t>(std::count_if(s.report.entries.begin(), s.report.entries.end(),
                                                [v](const CheckEntry& e) { return e.verdict == v; }));
  }
  return n;
}

int SuiteReport::exit_status() const {
  if (count(Verdict::Fail) > 0) return 1;
  if (count(Verdict::Untested) > 0) return 3;
  return 0;
}

SuiteReport run_suite(const ModelSpec& spec, const RunOptions& options) {
  SuiteReport report;
  report.table = spec.table;
  report.source = spec.source;

  std::vector<SuiteSpec> selected;
  if (options.suites.empty()) {
    selected = spec.suites;
  } else {
    const auto& kinds = suite_kinds();
    for (const auto& name : options.suites) {
      bool any = false;
      for (const auto& s : spec.suites) {
        if (s.label == name || s.kind == name) {
          const bool dup = std::any_of(selected.begin(), selected.end(),
                                       [&](const SuiteSpec& x) { return x.label == s.label; });
          if (!dup) selected.push_back(s);
          any = true;
        }
      }
      if (any) continue;
      if (std::find(kinds.begin(), kinds.end(), name) == kinds.end()) {
        throw DomainError("unknown suite '" + name + "'");
      }
      if (!spec.find_operator("D")) {
        throw DomainError("suite '" + name + "' has no block in the spec and the spec defines no operator D");
      }
      SuiteSpec s;
      s.kind = name;
      s.label = name;
      selected.push_back(s);
    }
  }
  for (const auto& s : selected) {
    SuiteResult r;
    r.label = s.label;
    r.kind = s.kind;
    r.op = s.op;
    r.budget = resolve_budget(s, options);
    run_one(spec, s, r);
    report.suites.push_back(std::move(r));
  }
  return report;
}

std::string render_human(const SuiteReport& report) {
  std::ostringstream os;
  os << "model: " << report.source << "\n";
  for (const auto& s : report.suites) {
    os << "suite " << s.label << " (" << s.kind << ") operator " << s.op;
    if (s.differential) os << ", differential " << *s.differential;
    os << ", budget degree " << s.budget.max_degree << " tuples " << s.budget.max_tuples << " seed "
       << s.budget.seed << "\n";
    for (const auto& [k, v] : s.facts) os << "  " << k << ": " << v << "\n";
    for (const auto& e : s.report.entries) {
      std::string tag = to_string(e.verdict);
      std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
      os << "[" << tag << "] " << s.label << "/" << e.name;
      if (!e.detail.empty()) os << "  " << e.detail;
      os << "\n";
      if (e.witness) {
        os << "    witness:";
        for (const auto& a : *e.witness) os << " (" << to_string(a) << ")";
        os << "\n";
      }
      if (e.residual) os << "    residual: " << to_string(*e.residual) << "\n";
      if (e.operator_residual) os << "    operator residual: " << to_string(*e.operator_residual) << "\n";
    }
  }
  os << "summary: " << report.count(Verdict::Pass) << " pass, " << report.count(Verdict::Fail) << " fail, "
     << report.count(Verdict::Untested) << " untested\n";
  return os.str();
}

std::string render_json(const SuiteReport& report) {
  Json j;
  j["format"] = kReportFormat;
  j["model"] = report.source;
  Json gens = Json::array();
  if (report.table) {
    for (const auto& g : report.table->generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  }
  j["generators"] = gens;
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    Json js;
    js["label"] = s.label;
    js["kind"] = s.kind;
    js["operator"] = s.op;
    if (s.differential) js["differential"] = *s.differential;
    js["budget"] = {{"max_degree", s.budget.max_degree}, {"max_tuples", s.budget.max_tuples}, {"seed", s.budget.seed}};
    Json facts = Json::object();
    for (const auto& [k, v] : s.facts) facts[k] = v;
    js["facts"] = facts;
    Json checks = Json::array();
    for (const auto& e : s.report.entries) {
      Json je;
      je["name"] = e.name;
      je["verdict"] = to_string(e.verdict);
      je["tested"] = e.tested;
      je["detail"] = e.detail;
      if (e.witness) je["witness"] = json_elements(*e.witness);
      if (e.residual) je["residual"] = to_string(*e.residual);
      if (e.operator_residual) je["operator_residual"] = to_term_lines(*e.operator_residual);
      checks.push_back(std::move(je));
    }
    js["checks"] = std::move(checks);
    suites.push_back(std::move(js));
  }
  j["suites"] = std::move(suites);
  j["summary"] = {{"pass", report.count(Verdict::Pass)},
                  {"fail", report.count(Verdict::Fail)},
                  {"untested", report.count(Verdict::Untested)},
                  {"exit_status", report.exit_status()}};
  return j.dump(2) + "\n";
}

}  // namespace bvk
