#include "bvk/diffop.hpp"

#include <algorithm>
#include <limits>

namespace bvk {

namespace {

struct Piece {
  Scalar coeff;
  Monomial mult;
  Monomial derivs;
};

// Sign of moving d_i into the normal-ordered product d^g (placing it after
// the d_j with j < i), or 0 if d_i is odd and already present.
int push_derivative_sign(const GeneratorTable& table, std::size_t i, const Monomial& g) {
  if (!table.is_odd(i)) return 1;
  if (g.exps[i] != 0) return 0;
  long odd_before = 0;
  for (std::size_t j = 0; j < i; ++j) {
    if (table.is_odd(j)) odd_before += g.exps[j];
  }
  return sign_pow(odd_before);
}

// d^g o d^h -> sign * d^{g+h}, sign 0 when an odd derivative repeats.
int merge_derivatives(const GeneratorTable& table, const Monomial& g, const Monomial& h,
                      Monomial& out) {
  return multiply_monomials(table, g, h, out);
}

// d_i applied to a single monomial: returns coefficient (0 if it vanishes).
Scalar derive_monomial(const GeneratorTable& table, std::size_t i, Monomial& m) {
  const auto e = m.exps[i];
  if (e == 0) return 0;
  long odd_before = 0;
  if (table.is_odd(i)) {
    for (std::size_t j = 0; j < i; ++j) {
      if (table.is_odd(j)) odd_before += m.exps[j];
    }
  }
  --m.exps[i];
  Scalar c = e;
  if (odd_before & 1) c = -c;
  return c;
}

}  // namespace

Operator::Operator(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw DomainError("operator requires a generator table");
}

Operator Operator::identity(TablePtr table) {
  Operator op(table);
  op.add_term(Monomial(table->size()), Monomial(table->size()), 1);
  return op;
}

Operator Operator::multiplication(const Element& by) {
  Operator op(by.table());
  const Monomial none(by.table()->size());
  for (const auto& [m, c] : by.terms()) op.add_term(m, none, c);
  return op;
}

Operator Operator::derivative(TablePtr table, const std::string& generator) {
  auto idx = table->find(generator);
  if (!idx) throw DomainError("unknown generator '" + generator + "'");
  Monomial d(table->size());
  d.exps[*idx] = 1;
  Operator op(table);
  op.add_term(Monomial(table->size()), d, 1);
  return op;
}

Operator Operator::term(TablePtr table, const Scalar& coeff, Monomial multiplier, Monomial derivs) {
  Operator op(std::move(table));
  op.add_term(multiplier, derivs, coeff);
  return op;
}

std::vector<OpTerm> Operator::term_list() const {
  std::vector<OpTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({c, k.multiplier, k.derivs});
  return out;
}

void Operator::add_term(const Monomial& multiplier, const Monomial& derivs, const Scalar& coeff) {
  const auto& table = *table_;
  if (multiplier.exps.size() != table.size() || derivs.exps.size() != table.size()) {
    throw DomainError("operator term exponent vectors must match the generator count");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.is_odd(i) && derivs.exps[i] > 1) {
      throw DomainError("derivative exponent of odd generator '" + table[i].name +
                        "' must be 0 or 1");
    }
  }
  if (coeff == 0) return;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.is_odd(i) && multiplier.exps[i] > 1) return;
  }
  auto [it, inserted] = terms_.try_emplace(OpKey{multiplier, derivs}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void Operator::check_same_table(const Operator& other) const {
  if (table_ != other.table_ && !(*table_ == *other.table_)) {
    throw DomainError("operators belong to different generator tables");
  }
}

Operator& Operator::operator+=(const Operator& other) {
  check_same_table(other);
  for (const auto& [k, c] : other.terms_) add_term(k.multiplier, k.derivs, c);
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  check_same_table(other);
  for (const auto& [k, c] : other.terms_) add_term(k.multiplier, k.derivs, -c);
  return *this;
}

Operator& Operator::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Operator Operator::operator-() const {
  Operator r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

bool Operator::operator==(const Operator& other) const {
  return (table_ == other.table_ || *table_ == *other.table_) && terms_ == other.terms_;
}

Degree term_degree(const GeneratorTable& table, const OpKey& key) {
  return degree_of(table, key.multiplier) - degree_of(table, key.derivs);
}

Element apply(const Operator& op, const Element& a) {
  if (op.table() != a.table() && !(*op.table() == *a.table())) {
    throw DomainError("apply: operator and element use different generator tables");
  }
  const auto& table = *op.table();
  const std::size_t n = table.size();
  Element result(a.table());
  Monomial prod;
  for (const auto& [key, c] : op.terms()) {
    for (const auto& [m, am] : a.terms()) {
      Monomial work = m;
      Scalar coeff = c * am;
      for (std::size_t i = n; i-- > 0 && coeff != 0;) {
        for (std::uint32_t r = 0; r < key.derivs.exps[i] && coeff != 0; ++r) {
          coeff *= derive_monomial(table, i, work);
        }
      }
      if (coeff == 0) continue;
      const int s = multiply_monomials(table, key.multiplier, work, prod);
      if (s == 0) continue;
      if (s < 0) coeff = -coeff;
      result.add_term(prod, coeff);
    }
  }
  return result;
}

Operator compose(const Operator& d, const Operator& e) {
  if (d.table() != e.table() && !(*d.table() == *e.table())) {
    throw DomainError("compose: operators use different generator tables");
  }
  const auto& table = *d.table();
  const std::size_t n = table.size();
  Operator result(d.table());
  Monomial tmp;
  Monomial merged;
  for (const auto& [kd, cd] : d.terms()) {
    for (const auto& [ke, ce] : e.terms()) {
      // d^alpha o L_m, expanded one derivative at a time from the right.
      std::vector<Piece> pieces{{Scalar(1), ke.multiplier, Monomial(n)}};
      for (std::size_t i = n; i-- > 0;) {
        for (std::uint32_t r = 0; r < kd.derivs.exps[i]; ++r) {
          std::vector<Piece> next;
          next.reserve(pieces.size() * 2);
          for (const auto& p : pieces) {
            // d_i o L_m o d^g = L_{d_i m} o d^g + (-1)^{|d_i||m|} L_m o d_i o d^g
            Monomial dm = p.mult;
            const Scalar dc = derive_monomial(table, i, dm);
            if (dc != 0) next.push_back({p.coeff * dc, std::move(dm), p.derivs});
            const int ps = push_derivative_sign(table, i, p.derivs);
            if (ps != 0) {
              Scalar c = p.coeff * ps;
              if (table.is_odd(i) && parity_of(table, p.mult) == 1) c = -c;
              Monomial g = p.derivs;
              ++g.exps[i];
              next.push_back({std::move(c), p.mult, std::move(g)});
            }
          }
          pieces = std::move(next);
        }
      }
      for (const auto& p : pieces) {
        const int s1 = multiply_monomials(table, kd.multiplier, p.mult, tmp);
        if (s1 == 0) continue;
        const int s2 = merge_derivatives(table, p.derivs, ke.derivs, merged);
        if (s2 == 0) continue;
        Scalar c = cd * ce * p.coeff;
        if (s1 * s2 < 0) c = -c;
        result.add_term(tmp, merged, c);
      }
    }
  }
  return result;
}

Operator anticommutator(const Operator& d, const Operator& e) {
  return compose(d, e) + compose(e, d);
}

std::map<Degree, Operator> degree_components(const Operator& op) {
  std::map<Degree, Operator> out;
  for (const auto& [k, c] : op.terms()) {
    auto it = out.try_emplace(term_degree(*op.table(), k), op.table()).first;
    it->second.add_term(k.multiplier, k.derivs, c);
  }
  return out;
}

std::optional<int> operator_parity(const Operator& op) {
  std::optional<int> p;
  for (const auto& [k, c] : op.terms()) {
    const int tp = parity(term_degree(*op.table(), k));
    if (p && *p != tp) return std::nullopt;
    p = tp;
  }
  return p;
}

StructuralOrder structural_order(const Operator& op) {
  if (op.is_zero()) return {0, true};
  unsigned best = 0;
  for (const auto& [k, c] : op.terms()) best = std::max(best, k.derivs.total());
  return {best, false};
}

bool is_odd(const Operator& op) {
  for (const auto& [deg, comp] : degree_components(op)) {
    if (parity(deg) == 0) return false;
  }
  return true;
}

Element constant_term(const Operator& op) {
  return apply(op, Element::unit(op.table()));
}

SquareZeroResult is_square_zero(const Operator& op) {
  SquareZeroResult r{true, compose(op, op), std::nullopt};
  if (r.square.is_zero()) return r;
  r.square_zero = false;
  // A term whose derivative multi-index is minimal in total order survives on
  // the monomial with exactly those exponents; no other term can cancel it.
  const OpKey* best = nullptr;
  std::uint32_t best_total = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [k, c] : r.square.terms()) {
    if (k.derivs.total() < best_total) {
      best_total = k.derivs.total();
      best = &k;
    }
  }
  r.witness = best->derivs;
  return r;
}

std::vector<std::string> to_term_lines(const Operator& op) {
  std::vector<std::string> lines;
  for (const auto& [k, c] : op.terms()) {
    std::string s = "term " + to_string(c) + " mult";
    for (auto e : k.multiplier.exps) s += ' ' + std::to_string(e);
    s += " deriv";
    for (auto e : k.derivs.exps) s += ' ' + std::to_string(e);
    lines.push_back(std::move(s));
  }
  return lines;
}

std::string to_string(const Operator& op) {
  if (op.is_zero()) return "0";
  const auto& table = *op.table();
  std::string s;
  bool first = true;
  for (const auto& [k, c] : op.terms()) {
    const Scalar mag = abs(c);
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string body;
    if (!k.multiplier.is_unit()) body = to_string(table, k.multiplier);
    if (!k.derivs.is_unit()) {
      std::string d = "D(";
      bool firstd = true;
      for (std::size_t i = 0; i < k.derivs.exps.size(); ++i) {
        for (std::uint32_t r = 0; r < k.derivs.exps[i]; ++r) {
          if (!firstd) d += ',';
          d += table[i].name;
          firstd = false;
        }
      }
      d += ')';
      body += body.empty() ? d : '*' + d;
    }
    if (body.empty()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + '*';
      s += body;
    }
  }
  return s;
}

}  // namespace bvk
