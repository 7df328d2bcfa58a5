#include "bvk/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace bvk {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

GeneratorTable::GeneratorTable(std::vector<Generator> generators)
    : generators_(std::move(generators)) {
  std::unordered_set<std::string> seen;
  for (const auto& g : generators_) {
    if (!valid_identifier(g.name)) throw DomainError("invalid generator name '" + g.name + "'");
    if (!seen.insert(g.name).second) throw DomainError("duplicate generator name '" + g.name + "'");
  }
}

std::optional<std::size_t> GeneratorTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

bool GeneratorTable::operator==(const GeneratorTable& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (generators_[i].name != other.generators_[i].name ||
        generators_[i].degree != other.generators_[i].degree) {
      return false;
    }
  }
  return true;
}

TablePtr make_table(std::vector<Generator> generators) {
  return std::make_shared<const GeneratorTable>(std::move(generators));
}

std::uint32_t Monomial::total() const noexcept {
  return std::accumulate(exps.begin(), exps.end(), std::uint32_t{0});
}

Degree degree_of(const GeneratorTable& table, const Monomial& m) {
  Degree d = 0;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    d += static_cast<Degree>(m.exps[i]) * table.degree(i);
  }
  return d;
}

int parity_of(const GeneratorTable& table, const Monomial& m) {
  int p = 0;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (table.is_odd(i)) p ^= static_cast<int>(m.exps[i] & 1U);
  }
  return p;
}

int multiply_monomials(const GeneratorTable& table, const Monomial& a, const Monomial& b,
                       Monomial& out) {
  const std::size_t n = table.size();
  // Moving each odd factor of b leftwards past the odd factors of a with a
  // larger index costs one sign each.
  long swaps = 0;
  int odd_in_a_above = 0;
  for (std::size_t k = n; k-- > 0;) {
    if (!table.is_odd(k)) continue;
    if (b.exps[k] != 0) {
      if (a.exps[k] != 0) return 0;
      swaps += odd_in_a_above;
    }
    if (a.exps[k] != 0) ++odd_in_a_above;
  }
  out.exps.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.exps[k] = a.exps[k] + b.exps[k];
  return sign_pow(swaps);
}

Element::Element(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw DomainError("element requires a generator table");
}

Element Element::unit(TablePtr table) {
  const auto n = table->size();
  return monomial(std::move(table), Monomial(n), 1);
}

Element Element::monomial(TablePtr table, Monomial m, Scalar coeff) {
  if (m.exps.size() != table->size()) {
    throw DomainError("monomial length does not match generator table");
  }
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (table->is_odd(i) && m.exps[i] > 1) return Element(std::move(table));
  }
  Element e(std::move(table));
  e.add_term(m, coeff);
  return e;
}

Element Element::generator(TablePtr table, const std::string& name) {
  auto idx = table->find(name);
  if (!idx) throw DomainError("unknown generator '" + name + "'");
  Monomial m(table->size());
  m.exps[*idx] = 1;
  return monomial(std::move(table), std::move(m));
}

std::optional<Degree> Element::degree() const {
  std::optional<Degree> d;
  for (const auto& [m, c] : terms_) {
    const Degree md = degree_of(*table_, m);
    if (d && *d != md) return std::nullopt;
    d = md;
  }
  return d;
}

std::optional<int> Element::parity() const {
  std::optional<int> p;
  for (const auto& [m, c] : terms_) {
    const int mp = parity_of(*table_, m);
    if (p && *p != mp) return std::nullopt;
    p = mp;
  }
  return p;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Element::check_same_table(const Element& other) const {
  if (table_ != other.table_ && !(*table_ == *other.table_)) {
    throw DomainError("elements belong to different generator tables");
  }
}

Element& Element::operator+=(const Element& other) {
  check_same_table(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  check_same_table(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool Element::operator==(const Element& other) const {
  return (table_ == other.table_ || *table_ == *other.table_) && terms_ == other.terms_;
}

Element multiply(const Element& a, const Element& b) {
  if (a.table() != b.table() && !(*a.table() == *b.table())) {
    throw DomainError("multiply: elements belong to different generator tables");
  }
  Element r(a.table());
  Monomial prod;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = multiply_monomials(*a.table(), ma, mb, prod);
      if (s == 0) continue;
      r.add_term(prod, s > 0 ? Scalar(ca * cb) : Scalar(-(ca * cb)));
    }
  }
  return r;
}

std::map<Degree, Element> grade_decompose(const Element& a) {
  std::map<Degree, Element> out;
  for (const auto& [m, c] : a.terms()) {
    auto it = out.try_emplace(degree_of(*a.table(), m), a.table()).first;
    it->second.add_term(m, c);
  }
  return out;
}

Element partial_derivative(const Element& a, std::size_t index) {
  const auto& table = *a.table();
  if (index >= table.size()) throw DomainError("partial_derivative: generator index out of range");
  Element r(a.table());
  const bool odd = table.is_odd(index);
  for (const auto& [m, c] : a.terms()) {
    const auto e = m.exps[index];
    if (e == 0) continue;
    int before = 0;
    if (odd) {
      for (std::size_t j = 0; j < index; ++j) {
        if (table.is_odd(j)) before += static_cast<int>(m.exps[j]);
      }
    }
    Monomial dm = m;
    --dm.exps[index];
    Scalar coeff = c * e;
    if (before & 1) coeff = -coeff;
    r.add_term(dm, coeff);
  }
  return r;
}

std::vector<Monomial> monomials_up_to(const GeneratorTable& table, std::uint32_t max_total) {
  std::vector<Monomial> out;
  const std::size_t n = table.size();
  for (std::uint32_t total = 0; total <= max_total; ++total) {
    Monomial m(n);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
      if (i == n) {
        if (left == 0) out.push_back(m);
        return;
      }
      const std::uint32_t cap = table.is_odd(i) ? std::min<std::uint32_t>(1, left) : left;
      for (std::uint32_t e = 0; e <= cap; ++e) {
        m.exps[i] = e;
        rec(i + 1, left - e);
      }
      m.exps[i] = 0;
    };
    rec(0, total);
  }
  return out;
}

std::vector<Monomial> monomials_of_weight(const GeneratorTable& table,
                                          const std::vector<int>& weights, int weight) {
  const std::size_t n = table.size();
  if (weights.size() != n) throw DomainError("weight vector length does not match generator table");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] < 0) throw DomainError("generator weights must be nonnegative");
    if (!table.is_odd(i) && weights[i] == 0) {
      throw DomainError("even generator '" + table[i].name +
                        "' needs a positive weight for finite slices");
    }
  }
  std::vector<Monomial> out;
  if (weight < 0) return out;
  Monomial m(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      if (left == 0) out.push_back(m);
      return;
    }
    const int w = weights[i];
    const int cap = table.is_odd(i) ? 1 : left / w;
    for (int e = 0; e <= cap && e * w <= left; ++e) {
      m.exps[i] = static_cast<std::uint32_t>(e);
      rec(i + 1, left - e * w);
    }
    m.exps[i] = 0;
  };
  rec(0, weight);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const GeneratorTable& table, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += table[i].name;
    if (m.exps[i] > 1) s += '^' + std::to_string(m.exps[i]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Element& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Scalar mag = abs(c);
    const bool negative = c < 0;
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + '*';
      s += to_string(*a.table(), m);
    }
  }
  return s;
}

namespace {

class ElementParser {
 public:
  ElementParser(TablePtr table, const std::string& text) : table_(std::move(table)), text_(text) {}

  Element parse() {
    Element result(table_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty element");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Element term = parse_term();
      if (sign < 0) term = -term;
      result += term;
      skip_ws();
      if (pos_ == text_.size()) break;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("column " + std::to_string(pos_ + 1) + ": " + what + " in element '" +
                      text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Element parse_term() {
    Element acc = Element::unit(table_);
    acc = acc * parse_factor();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Element parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      Scalar value;
      try {
        value = parse_scalar(text_.substr(start, pos_ - start));
      } catch (const DomainError&) {
        pos_ = start;
        fail("malformed rational");
      }
      return Element::unit(table_) * value;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = text_.substr(start, pos_ - start);
      auto idx = table_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      std::uint32_t exponent = 1;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        skip_ws();
        const std::size_t estart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (estart == pos_) fail("expected exponent");
        exponent = static_cast<std::uint32_t>(std::stoul(text_.substr(estart, pos_ - estart)));
      }
      Monomial m(table_->size());
      m.exps[*idx] = exponent;
      return Element::monomial(table_, m);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  TablePtr table_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(TablePtr table, const std::string& text) {
  return ElementParser(std::move(table), text).parse();
}

}  // namespace bvk
