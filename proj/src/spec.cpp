#include "bvk/spec.hpp"

#include "bvk/models.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace bvk {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

template <class Int>
std::optional<Int> to_int(const std::string& s) {
  Int v{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

enum class Section { None, Generators, Model, Operator, Suite };

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ModelSpec run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto toks = tokenize(raw);
      if (toks.empty()) continue;
      const std::string& head = toks[0].text;
      if (head == "GENERATORS") {
        start_generators(toks);
      } else if (head == "MODEL") {
        start_model(toks);
      } else if (head == "OPERATOR") {
        start_operator(toks);
      } else if (head == "SUITE") {
        start_suite(toks);
      } else {
        body(toks);
      }
    }
    finish_generators();
    return std::move(spec_);
  }

 private:
  [[noreturn]] void error(const Token& t, const std::string& msg) const { throw SpecError(line_, t.column, msg); }
  [[noreturn]] void error_at_end(const std::vector<Token>& toks, const std::string& msg) const {
    const auto& last = toks.back();
    throw SpecError(line_, last.column + last.text.size(), msg);
  }

  void expect_arity(const std::vector<Token>& toks, std::size_t n, const std::string& usage) const {
    if (toks.size() < n) error_at_end(toks, "expected " + usage);
    if (toks.size() > n) error(toks[n], "unexpected token '" + toks[n].text + "'; expected " + usage);
  }

  void claim_name(const Token& t) {
    if (!is_identifier(t.text)) error(t, "invalid name '" + t.text + "'");
    if (!names_.insert(t.text).second) error(t, "duplicate name '" + t.text + "'");
  }

  void require_table(const Token& t) const {
    if (!spec_.table) error(t, "declare GENERATORS or a MODEL before " + t.text);
  }

  void start_generators(const std::vector<Token>& toks) {
    expect_arity(toks, 1, "GENERATORS on its own line");
    if (have_generators_ || spec_.table) error(toks[0], "generators are already declared");
    have_generators_ = true;
    section_ = Section::Generators;
  }

  void finish_generators() {
    if (!have_generators_ || spec_.table) return;
    if (gens_.empty()) throw SpecError(generators_line_ ? generators_line_ : line_, 1, "GENERATORS is empty");
    spec_.table = make_table(gens_);
  }

  void start_model(const std::vector<Token>& toks) {
    finish_generators();
    if (toks.size() < 3 || toks[1].text != "builtin") {
      if (toks.size() < 2) error_at_end(toks, "expected MODEL builtin <name> [key=value ...]");
      if (toks[1].text != "builtin") error(toks[1], "expected 'builtin' after MODEL");
      error_at_end(toks, "expected a builtin model name");
    }
    if (spec_.table) error(toks[0], "generators are already declared");
    std::map<std::string, std::string> params;
    std::string source = toks[2].text;
    for (std::size_t i = 3; i < toks.size(); ++i) {
      const auto eq = toks[i].text.find('=');
      if (eq == std::string::npos || eq == 0) error(toks[i], "expected key=value, got '" + toks[i].text + "'");
      const std::string key = toks[i].text.substr(0, eq);
      if (!params.emplace(key, toks[i].text.substr(eq + 1)).second) {
        error(toks[i], "duplicate parameter '" + key + "'");
      }
      source += " " + toks[i].text;
    }
    Model m = [&] {
      try {
        return builtin_model(toks[2].text, params);
      } catch (const DomainError& e) {
        error(toks[2], e.what());
      }
    }();
    spec_.table = m.table;
    spec_.weights = m.weights;
    spec_.source = source;
    for (const auto& g : m.table->generators()) names_.insert(g.name);
    names_.insert("D");
    names_.insert("d");
    spec_.operators.push_back({"D", m.D});
    spec_.operators.push_back({"d", m.d});
    section_ = Section::Model;
  }

  void start_operator(const std::vector<Token>& toks) {
    finish_generators();
    expect_arity(toks, 2, "OPERATOR <name>");
    require_table(toks[0]);
    claim_name(toks[1]);
    spec_.operators.push_back({toks[1].text, Operator(spec_.table)});
    section_ = Section::Operator;
  }

  void start_suite(const std::vector<Token>& toks) {
    finish_generators();
    if (toks.size() < 2) error_at_end(toks, "expected SUITE <kind> [label]");
    if (toks.size() > 3) error(toks[3], "unexpected token '" + toks[3].text + "'");
    require_table(toks[0]);
    const auto& kinds = suite_kinds();
    if (std::find(kinds.begin(), kinds.end(), toks[1].text) == kinds.end()) {
      std::string list;
      for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
      error(toks[1], "unknown suite '" + toks[1].text + "' (known: " + list + ")");
    }
    SuiteSpec s;
    s.kind = toks[1].text;
    s.label = toks.size() == 3 ? toks[2].text : toks[1].text;
    s.line = line_;
    const Token& label_tok = toks.size() == 3 ? toks[2] : toks[1];
    if (toks.size() == 3 && !is_identifier_or_dash(s.label)) error(label_tok, "invalid suite label '" + s.label + "'");
    if (!labels_.insert(s.label).second) error(label_tok, "duplicate suite label '" + s.label + "'");
    spec_.suites.push_back(std::move(s));
    section_ = Section::Suite;
  }

  static bool is_identifier_or_dash(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
  }

  void body(const std::vector<Token>& toks) {
    switch (section_) {
      case Section::None:
        error(toks[0], "expected a section header (GENERATORS, MODEL, OPERATOR or SUITE), got '" + toks[0].text + "'");
      case Section::Model:
        error(toks[0], "MODEL takes no body lines");
      case Section::Generators:
        generator_line(toks);
        return;
      case Section::Operator:
        operator_line(toks, spec_.operators.back().op);
        return;
      case Section::Suite:
        suite_line(toks);
        return;
    }
  }

  void generator_line(const std::vector<Token>& toks) {
    if (gens_.empty()) generators_line_ = line_;
    if (toks.size() < 2) error_at_end(toks, "expected <name> <degree> [weight=<w>]");
    if (toks.size() > 3) error(toks[3], "unexpected token '" + toks[3].text + "'");
    claim_name(toks[0]);
    const auto deg = to_int<Degree>(toks[1].text);
    if (!deg) error(toks[1], "degree must be an integer, got '" + toks[1].text + "'");
    int weight = 1;
    if (toks.size() == 3) {
      const std::string& w = toks[2].text;
      const auto v = w.rfind("weight=", 0) == 0 ? to_int<int>(w.substr(7)) : std::nullopt;
      if (!v) error(toks[2], "expected weight=<integer>, got '" + w + "'");
      weight = *v;
    }
    gens_.push_back({toks[0].text, *deg});
    spec_.weights.push_back(weight);
  }

 public:
  // Shared with parse_operator_lines.
  static void parse_term(const GeneratorTable& table, const std::vector<Token>& toks, std::size_t line,
                         Monomial& mult, Monomial& deriv, Scalar& coeff) {
    auto err = [&](const Token& t, const std::string& m) -> SpecError { return SpecError(line, t.column, m); };
    const std::size_t n = table.size();
    const std::size_t want = 4 + 2 * n;
    if (toks.size() < 2) {
      throw SpecError(line, toks[0].column + toks[0].text.size(), "expected term <coeff> mult <exps> deriv <exps>");
    }
    try {
      coeff = parse_scalar(toks[1].text);
    } catch (const DomainError& e) {
      throw err(toks[1], e.what());
    }
    auto read = [&](std::size_t at, const char* keyword, Monomial& into) -> std::size_t {
      if (at >= toks.size() || toks[at].text != keyword) {
        if (at >= toks.size()) {
          const auto& last = toks.back();
          throw SpecError(line, last.column + last.text.size(), std::string("expected '") + keyword + "'");
        }
        throw err(toks[at], std::string("expected '") + keyword + "', got '" + toks[at].text + "'");
      }
      into = Monomial(n);
      std::size_t i = at + 1;
      const std::string count_msg = std::string("expected ") + std::to_string(n) + " exponents after '" + keyword + "'";
      for (std::size_t g = 0; g < n; ++g, ++i) {
        if (i >= toks.size()) {
          const auto& last = toks.back();
          throw SpecError(line, last.column + last.text.size(), count_msg + ", got " + std::to_string(g));
        }
        if (!to_int<std::uint32_t>(toks[i].text)) {
          if (std::isalpha(static_cast<unsigned char>(toks[i].text[0])) != 0) {
            throw err(toks[i], count_msg + ", got " + std::to_string(g));
          }
          throw err(toks[i], "exponent must be a nonnegative integer, got '" + toks[i].text + "'");
        }
        const auto e = *to_int<std::uint32_t>(toks[i].text);
        if (e > 1 && table.is_odd(g)) {
          throw err(toks[i], std::string(std::string_view(keyword) == "deriv" ? "derivative" : "multiplier") +
                                 " exponent " + std::to_string(e) + " > 1 on odd generator '" + table[g].name + "'");
        }
        into.exps[g] = e;
      }
      return i;
    };
    const std::size_t after_mult = read(2, "mult", mult);
    const std::size_t after_deriv = read(after_mult, "deriv", deriv);
    if (after_deriv < toks.size()) {
      throw err(toks[after_deriv], "unexpected token '" + toks[after_deriv].text + "' (a term has " +
                                       std::to_string(want) + " fields)");
    }
  }

 private:
  void operator_line(const std::vector<Token>& toks, Operator& op) {
    if (toks[0].text == "term") {
      Monomial mult, deriv;
      Scalar coeff;
      parse_term(*spec_.table, toks, line_, mult, deriv, coeff);
      op.add_term(mult, deriv, coeff);
      return;
    }
    if (toks[0].text == "add") {
      expect_arity(toks, 3, "add <coeff> <operator>");
      Scalar c;
      try {
        c = parse_scalar(toks[1].text);
      } catch (const DomainError& e) {
        error(toks[1], e.what());
      }
      const Operator* other = nullptr;
      for (std::size_t i = 0; i + 1 < spec_.operators.size(); ++i) {
        if (spec_.operators[i].name == toks[2].text) other = &spec_.operators[i].op;
      }
      if (other == nullptr) error(toks[2], "unknown operator '" + toks[2].text + "'");
      op += c * *other;
      return;
    }
    if (toks[0].text == "named") {
      named_term(toks, op);
      return;
    }
    error(toks[0], "expected 'term', 'named' or 'add', got '" + toks[0].text + "'");
  }

  std::size_t generator_index(const std::string& name, std::size_t column) const {
    const auto idx = spec_.table->find(name);
    if (!idx) throw SpecError(line_, column, "unknown generator '" + name + "'");
    return *idx;
  }

  void bump(Monomial& m, std::size_t g, std::uint32_t by, std::size_t column, const char* what) const {
    m.exps[g] += by;
    if (m.exps[g] > 1 && spec_.table->is_odd(g)) {
      throw SpecError(line_, column, std::string(what) + " exponent " + std::to_string(m.exps[g]) +
                                         " > 1 on odd generator '" + (*spec_.table)[g].name + "'");
    }
  }

  // named <coeff> <word> [d <gen> ...], word = 1 or g^e*h*...
  void named_term(const std::vector<Token>& toks, Operator& op) {
    if (toks.size() < 3) error_at_end(toks, "expected named <coeff> <monomial> [d <generator> ...]");
    Scalar coeff;
    try {
      coeff = parse_scalar(toks[1].text);
    } catch (const DomainError& e) {
      error(toks[1], e.what());
    }
    const std::size_t n = spec_.table->size();
    Monomial mult(n), deriv(n);
    const std::string& word = toks[2].text;
    if (word != "1") {
      std::size_t start = 0;
      while (start <= word.size()) {
        const std::size_t star = std::min(word.find('*', start), word.size());
        const std::string factor = word.substr(start, star - start);
        const std::size_t col = toks[2].column + start;
        const std::size_t caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        std::uint32_t e = 1;
        if (caret != std::string::npos) {
          const auto v = to_int<std::uint32_t>(factor.substr(caret + 1));
          if (!v) throw SpecError(line_, col + caret + 1, "exponent must be a nonnegative integer");
          e = *v;
        }
        if (name.empty()) throw SpecError(line_, col, "empty factor in '" + word + "'");
        bump(mult, generator_index(name, col), e, col, "multiplier");
        start = star + 1;
      }
    }
    if (toks.size() > 3) {
      if (toks[3].text != "d") error(toks[3], "expected 'd' before derivative generators");
      if (toks.size() == 4) error_at_end(toks, "expected at least one generator after 'd'");
      for (std::size_t i = 4; i < toks.size(); ++i) {
        bump(deriv, generator_index(toks[i].text, toks[i].column), 1, toks[i].column, "derivative");
      }
    }
    op.add_term(mult, deriv, coeff);
  }

  void suite_line(const std::vector<Token>& toks) {
    SuiteSpec& s = spec_.suites.back();
    const std::string& key = toks[0].text;
    auto one = [&]() -> const Token& {
      expect_arity(toks, 2, key + " <value>");
      return toks[1];
    };
    auto unsigned_value = [&]() -> std::uint64_t {
      const Token& t = one();
      const auto v = to_int<std::uint64_t>(t.text);
      if (!v) error(t, key + " needs a nonnegative integer, got '" + t.text + "'");
      return *v;
    };
    auto operator_name = [&]() -> std::string {
      const Token& t = one();
      if (!spec_.find_operator(t.text)) error(t, "unknown operator '" + t.text + "'");
      return t.text;
    };
    auto only_for = [&](std::initializer_list<const char*> kinds) {
      for (const char* k : kinds) {
        if (s.kind == k) return;
      }
      error(toks[0], "key '" + key + "' does not apply to suite '" + s.kind + "'");
    };
    if (key == "operator") {
      s.op = operator_name();
    } else if (key == "differential") {
      only_for({"bvinfty", "cohomology"});
      s.differential = operator_name();
    } else if (key == "budget-degree") {
      const auto v = unsigned_value();
      if (v > 64) error(toks[1], "budget-degree above 64 is not supported");
      s.budget_degree = static_cast<std::uint32_t>(v);
    } else if (key == "budget-tuples") {
      s.budget_tuples = static_cast<std::size_t>(unsigned_value());
    } else if (key == "seed") {
      s.seed = unsigned_value();
    } else if (key == "max-arity") {
      only_for({"brackets", "linfty"});
      const auto v = unsigned_value();
      if (v < 1 || v > 8) error(toks[1], "max-arity must be between 1 and 8");
      s.max_arity = static_cast<unsigned>(v);
    } else if (key == "order") {
      only_for({"bv-core"});
      const auto v = unsigned_value();
      if (v > 8) error(toks[1], "order above 8 is not supported");
      s.order = static_cast<unsigned>(v);
    } else if (key == "window") {
      only_for({"cohomology"});
      expect_arity(toks, 3, "window <min-weight> <max-weight>");
      const auto lo = to_int<int>(toks[1].text);
      const auto hi = to_int<int>(toks[2].text);
      if (!lo) error(toks[1], "window bounds must be integers");
      if (!hi) error(toks[2], "window bounds must be integers");
      if (*lo > *hi) error(toks[2], "window maximum is below the minimum");
      s.window_min = *lo;
      s.window_max = *hi;
    } else if (key == "cap") {
      only_for({"cohomology"});
      const Token& t = one();
      const auto v = to_int<int>(t.text);
      if (!v) error(t, "cap needs an integer weight");
      s.cap_weight = *v;
    } else if (key == "bracket") {
      only_for({"gerstenhaber"});
      const Token& t = one();
      if (t.text != "bv" && t.text != "schouten") error(t, "bracket must be 'bv' or 'schouten'");
      if (t.text == "schouten" && !has_polyvector_layout(*spec_.table)) {
        error(t, "the schouten bracket needs generators x1..xn (even) followed by xi1..xin (odd)");
      }
      s.bracket = t.text;
    } else {
      error(toks[0], "unknown suite key '" + key + "'");
    }
  }

  const std::string& text_;
  ModelSpec spec_;
  Section section_ = Section::None;
  std::size_t line_ = 0;
  std::size_t generators_line_ = 0;
  bool have_generators_ = false;
  std::vector<Generator> gens_;
  std::set<std::string> names_;
  std::set<std::string> labels_;
};

}  // namespace

SpecError::SpecError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

const std::vector<std::string>& suite_kinds() {
  static const std::vector<std::string> kinds{"bv-core", "brackets", "linfty",      "split",
                                              "derivation", "bvinfty", "cohomology", "gerstenhaber"};
  return kinds;
}

const Operator* ModelSpec::find_operator(const std::string& name) const {
  for (const auto& o : operators) {
    if (o.name == name) return &o.op;
  }
  return nullptr;
}

ModelSpec parse_spec(const std::string& text) {
  ModelSpec spec = Parser(text).run();
  if (!spec.table) throw SpecError(1, 1, "the spec declares neither GENERATORS nor a MODEL");
  for (const auto& s : spec.suites) {
    if (!spec.find_operator(s.op)) {
      throw SpecError(s.line, 1, "suite '" + s.label + "' needs an operator named '" + s.op +
                                     "'; add an 'operator <name>' line");
    }
  }
  return spec;
}

ModelSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

Operator parse_operator_lines(const TablePtr& table, const std::vector<std::string>& lines) {
  Operator op(table);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto toks = tokenize(lines[i]);
    if (toks.empty() || toks[0].text != "term") {
      throw SpecError(i + 1, toks.empty() ? 1 : toks[0].column, "expected a term line");
    }
    Monomial mult, deriv;
    Scalar coeff;
    Parser::parse_term(*table, toks, i + 1, mult, deriv, coeff);
    op.add_term(mult, deriv, coeff);
  }
  return op;
}

}  // namespace bvk
