#include "bvk/bvk.h"

#include "bvk/models.hpp"
#include "bvk/suite.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

struct bvk_session {
  bvk::ModelSpec spec;
};

namespace {

using Json = nlohmann::ordered_json;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

bvk_status set_error(bvk_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

// Runs `body`, translating library exceptions to status codes.
template <class F>
bvk_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const bvk::SpecError& e) {
    return set_error(BVK_ERR_SPEC, e.what());
  } catch (const bvk::IoError& e) {
    return set_error(BVK_ERR_IO, e.what());
  } catch (const bvk::DomainError& e) {
    return set_error(BVK_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BVK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BVK_ERR_INTERNAL, e.what());
  }
}

bvk_status check_options(const bvk_options* o) {
  if (o == nullptr) return BVK_OK;
  if (o->format != BVK_FORMAT_HUMAN && o->format != BVK_FORMAT_JSON) {
    return set_error(BVK_ERR_ARG, "unknown output format");
  }
  if (o->budget_degree > 64) return set_error(BVK_ERR_ARG, "budget degree above 64 is not supported");
  return BVK_OK;
}

bvk::RunOptions run_options(const bvk_options* o) {
  bvk::RunOptions r;
  if (o == nullptr) return r;
  if (o->budget_degree >= 0) r.budget_degree = static_cast<std::uint32_t>(o->budget_degree);
  if (o->budget_tuples >= 0) r.budget_tuples = static_cast<std::size_t>(o->budget_tuples);
  if (o->seed >= 0) r.seed = static_cast<std::uint64_t>(o->seed);
  if (o->suites != nullptr) {
    std::stringstream ss(o->suites);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) r.suites.push_back(item);
    }
  }
  return r;
}

bvk::Budget budget_of(const bvk_options* o) {
  const auto r = run_options(o);
  bvk::Budget b;
  if (r.budget_degree) b.max_degree = *r.budget_degree;
  if (r.budget_tuples) b.max_tuples = *r.budget_tuples;
  if (r.seed) b.seed = *r.seed;
  return b;
}

bool json_out(const bvk_options* o) { return o != nullptr && o->format == BVK_FORMAT_JSON; }

const bvk::Operator& operator_named(const bvk_session* s, const char* name) {
  const bvk::Operator* op = s->spec.find_operator(name);
  if (op == nullptr) throw bvk::DomainError(std::string("unknown operator '") + name + "'");
  return *op;
}

const char* kExplain =
    R"(Sign conventions

Degrees and parity
  Generators carry integer degrees; parity is the degree mod 2. Odd
  generators anticommute and square to zero. Derivatives act from the left:
  d/dg passes a generator h with the sign (-1)^{|g||h|}.

Operators
  Normal form: sum of c * m * d^alpha with the derivatives acting first.
  Term degree = |m| - sum of alpha_g |g|. D is odd when every term has odd
  degree.

Koszul sign
  eps(sigma; a_1..a_n) is the sign of reordering graded letters: each
  transposition of adjacent a, b contributes (-1)^{|a||b|}. graded_sign also
  multiplies by the sign of sigma.

Higher brackets
  F^1 = D and
  F^{n+1}(a_1..a_n, b) = F^n(a_1..a_{n-1}, a_n b) - F^n(a_1..a_n) b
      - (-1)^{|a_n|(|a_1| + ... + |a_{n-1}| + |D|)} a_n F^n(a_1..a_{n-1}, b).
  Equivalently F^n(a_1..a_n) is the sum over k = 1..n and unshuffles sigma
  of type (k, n-k) of (-1)^{n-k} eps(sigma) D(a_s(1)..a_s(k)) a_s(k+1)..a_s(n).
  D has order <= k iff F^{k+1} vanishes identically (order is certified for
  D - D(1) when D(1) != 0).

BV bracket
  [a, b] = (-1)^{|a|} F^2(a, b). For D = sum_i d/dx_i d/dxi_i on polyvector
  fields this is -1 times the Schouten bracket
    [P, Q] = sum_i ((-1)^{|P|+1} dP/dxi_i dQ/dx_i - dP/dx_i dQ/dxi_i).

Gerstenhaber checks (shifted degree s(a) = |a| - 1)
  [a, b] = -(-1)^{s(a)s(b)} [b, a]
  [a, [b, c]] = [[a, b], c] + (-1)^{s(a)s(b)} [b, [a, c]]
  [a, bc] = [a, b] c + (-1)^{|b||c|} [a, c] b

L-infinity brackets
  l_k(a_1..a_k) = c_k (-1)^{sum_i |a_i|(k-i)} F^k(a_1..a_k) with
  c_k = (-1)^{k(k+1)/2 + 1}; l_1 = D and l_2 is the BV bracket.
  Q_k extends l_k to words of length n as a coderivation with the extra
  factor (-1)^{k(n-k)}; Q = sum_k Q_k squares to zero iff D does.

Degree split
  A square-zero D splits as D_1 + D_2 + ... with D_n of degree 3 - 2n and
  order <= n. D^2 = 0 becomes sum_{a+b=s} D_a D_b = 0 for every s >= 2.

Exit status of check
  0 all pass, 1 a check failed, 2 spec or usage error, 3 untested entries
  and no failure.
)";

}  // namespace

extern "C" {

bvk_options bvk_default_options(void) {
  bvk_options o;
  o.budget_degree = -1;
  o.budget_tuples = -1;
  o.seed = -1;
  o.suites = nullptr;
  o.format = BVK_FORMAT_HUMAN;
  return o;
}

const char* bvk_last_error(void) { return g_last_error.c_str(); }

const char* bvk_report_format(void) { return bvk::kReportFormat; }

void bvk_string_free(char* s) { std::free(s); }

void bvk_session_free(bvk_session* session) { delete session; }

bvk_status bvk_session_from_text(const char* text, bvk_session** out) {
  if (text == nullptr || out == nullptr) return set_error(BVK_ERR_ARG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<bvk_session>(bvk_session{bvk::parse_spec(text)});
    *out = s.release();
    return BVK_OK;
  });
}

bvk_status bvk_session_from_file(const char* path, bvk_session** out) {
  if (path == nullptr || out == nullptr) return set_error(BVK_ERR_ARG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<bvk_session>(bvk_session{bvk::parse_spec_file(path)});
    *out = s.release();
    return BVK_OK;
  });
}

bvk_status bvk_run(bvk_session* session, const bvk_options* options, char** report, int* exit_status) {
  if (session == nullptr || report == nullptr) return set_error(BVK_ERR_ARG, "null argument");
  *report = nullptr;
  if (const auto st = check_options(options); st != BVK_OK) return st;
  return guarded([&] {
    bvk::SuiteReport r;
    try {
      r = bvk::run_suite(session->spec, run_options(options));
    } catch (const bvk::DomainError& e) {
      // only the suite selection throws here; suite failures are report entries
      return set_error(BVK_ERR_ARG, e.what());
    }
    *report = dup(json_out(options) ? bvk::render_json(r) : bvk::render_human(r));
    if (exit_status != nullptr) *exit_status = r.exit_status();
    return *report != nullptr ? BVK_OK : set_error(BVK_ERR_INTERNAL, "out of memory");
  });
}

bvk_status bvk_brackets(bvk_session* session, const char* op, const char* const* args, size_t nargs,
                        const bvk_options* options, char** out) {
  if (session == nullptr || op == nullptr || out == nullptr || (nargs > 0 && args == nullptr)) {
    return set_error(BVK_ERR_ARG, "null argument");
  }
  *out = nullptr;
  if (nargs == 0) return set_error(BVK_ERR_ARG, "brackets need at least one argument");
  if (const auto st = check_options(options); st != BVK_OK) return st;
  return guarded([&] {
    const bvk::Operator& D = operator_named(session, op);
    std::vector<bvk::Element> xs;
    for (size_t i = 0; i < nargs; ++i) {
      if (args[i] == nullptr) return set_error(BVK_ERR_ARG, "null bracket argument");
      try {
        xs.push_back(bvk::parse_element(session->spec.table, args[i]));
      } catch (const bvk::DomainError& e) {
        return set_error(BVK_ERR_ARG, std::string("argument ") + std::to_string(i + 1) + ": " + e.what());
      }
    }
    const bvk::Element akman = bvk::akman_bracket(D, xs);
    const bvk::Element koszul = bvk::koszul_bracket(D, xs);
    std::optional<bvk::Element> bv;
    if (nargs == 2) bv = bvk::bv_bracket(D, xs[0], xs[1]);
    std::string text;
    if (json_out(options)) {
      Json j;
      j["operator"] = op;
      Json a = Json::array();
      for (const auto& x : xs) a.push_back(bvk::to_string(x));
      j["args"] = a;
      j["arity"] = nargs;
      j["akman"] = bvk::to_string(akman);
      j["koszul"] = bvk::to_string(koszul);
      j["agree"] = akman == koszul;
      if (bv) j["bv_bracket"] = bvk::to_string(*bv);
      text = j.dump(2) + "\n";
    } else {
      std::string list;
      for (const auto& x : xs) list += (list.empty() ? "" : ", ") + bvk::to_string(x);
      const std::string k = std::to_string(nargs);
      text = "F^" + k + "(" + list + ") = " + bvk::to_string(akman) + "\n";
      text += "Koszul form: " + bvk::to_string(koszul) + (akman == koszul ? " (agrees)" : " (DISAGREES)") + "\n";
      if (bv) text += "BV bracket (-1)^{|a|} F^2(a, b) = " + bvk::to_string(*bv) + "\n";
    }
    *out = dup(text);
    return BVK_OK;
  });
}

bvk_status bvk_split(bvk_session* session, const char* op, const bvk_options* options, char** out) {
  if (session == nullptr || op == nullptr || out == nullptr) return set_error(BVK_ERR_ARG, "null argument");
  *out = nullptr;
  if (const auto st = check_options(options); st != BVK_OK) return st;
  return guarded([&] {
    const bvk::Operator& D = operator_named(session, op);
    const auto split = bvk::degree_split(D, budget_of(options));
    const auto ids = bvk::split_identities(split);
    std::string text;
    if (json_out(options)) {
      Json j;
      j["operator"] = op;
      Json comps = Json::array();
      for (const auto& c : split.components) {
        comps.push_back({{"n", c.n},
                         {"degree", c.degree},
                         {"order_certified", c.certificate.passed},
                         {"sharp", c.certificate.sharp},
                         {"structural_order", bvk::structural_order(c.op).order},
                         {"terms", bvk::to_term_lines(c.op)}});
      }
      j["components"] = comps;
      Json res = Json::array();
      for (const auto& [deg, part] : split.residual_components) {
        res.push_back({{"degree", deg}, {"terms", bvk::to_term_lines(part)}});
      }
      j["residual"] = res;
      Json idj = Json::array();
      for (const auto& e : ids.entries) idj.push_back({{"name", e.name}, {"verdict", bvk::to_string(e.verdict)}});
      j["identities"] = idj;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "n  degree  order<=n  sharp  operator\n";
      for (const auto& c : split.components) {
        os << c.n << "  " << c.degree << "  " << (c.certificate.passed ? "yes" : "NO") << "  "
           << (c.certificate.sharp ? "yes" : "no") << "  " << bvk::to_string(c.op) << "\n";
      }
      for (const auto& [deg, part] : split.residual_components) {
        os << "residual degree " << deg << ": " << bvk::to_string(part) << "\n";
      }
      for (const auto& e : ids.entries) os << e.name << ": " << bvk::to_string(e.verdict) << "\n";
      text = os.str();
    }
    *out = dup(text);
    return BVK_OK;
  });
}

bvk_status bvk_cohomology(bvk_session* session, const char* differential, int min_weight, int max_weight,
                          const bvk_options* options, char** out) {
  if (session == nullptr || differential == nullptr || out == nullptr) {
    return set_error(BVK_ERR_ARG, "null argument");
  }
  *out = nullptr;
  if (min_weight > max_weight) return set_error(BVK_ERR_ARG, "window maximum is below the minimum");
  if (const auto st = check_options(options); st != BVK_OK) return st;
  return guarded([&] {
    const bvk::Operator& d = operator_named(session, differential);
    bvk::Window w;
    w.min_weight = min_weight;
    w.max_weight = max_weight;
    const bvk::Cohomology h(d, session->spec.weights, w);
    std::string text;
    if (json_out(options)) {
      Json arr = Json::array();
      for (const auto* s : h.window_slices()) {
        Json reps = Json::array();
        for (const auto& r : s->representatives) reps.push_back(bvk::to_string(r));
        arr.push_back({{"degree", s->key.degree},
                       {"weight", s->key.weight},
                       {"chains", s->basis.size()},
                       {"cycles", s->cycles},
                       {"boundaries", s->boundaries},
                       {"dim", s->representatives.size()},
                       {"representatives", reps}});
      }
      Json j;
      j["differential"] = differential;
      j["window"] = {min_weight, max_weight};
      j["slices"] = arr;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "degree  weight  chains  cycles  boundaries  dim  representatives\n";
      for (const auto* s : h.window_slices()) {
        os << s->key.degree << "  " << s->key.weight << "  " << s->basis.size() << "  " << s->cycles << "  "
           << s->boundaries << "  " << s->representatives.size() << " ";
        for (const auto& r : s->representatives) os << " " << bvk::to_string(r);
        os << "\n";
      }
      text = os.str();
    }
    *out = dup(text);
    return BVK_OK;
  });
}

bvk_status bvk_explain(char** out) {
  if (out == nullptr) return set_error(BVK_ERR_ARG, "null argument");
  *out = dup(kExplain);
  return BVK_OK;
}

}  // extern "C"
