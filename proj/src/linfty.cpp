#include "bvk/linfty.hpp"

#include <algorithm>
#include <numeric>

namespace bvk {

namespace {

std::vector<Degree> shifted_parities(std::span<const Element> letters, const char* what) {
  std::vector<Degree> s;
  s.reserve(letters.size());
  for (const auto& a : letters) s.push_back(a.is_zero() ? 1 : require_parity(a, what) + 1);
  return s;
}

std::vector<Degree> unshifted_parities(std::span<const Element> letters, const char* what) {
  std::vector<Degree> s;
  s.reserve(letters.size());
  for (const auto& a : letters) s.push_back(a.is_zero() ? 0 : require_parity(a, what));
  return s;
}

template <typename T>
std::vector<T> take(std::span<const T> xs, const std::vector<int>& perm, std::size_t from,
                    std::size_t to) {
  std::vector<T> out;
  out.reserve(to - from);
  for (std::size_t i = from; i < to; ++i) out.push_back(xs[static_cast<std::size_t>(perm[i])]);
  return out;
}

bool any_zero(std::span<const Element> xs) {
  return std::any_of(xs.begin(), xs.end(), [](const Element& e) { return e.is_zero(); });
}

}  // namespace

Word::Word(std::vector<Element> ls) : letters(std::move(ls)) {
  if (letters.empty()) throw DomainError("word: the empty word is not allowed");
  for (const auto& a : letters) {
    if (!a.is_zero()) require_parity(a, "word");
  }
}

WordSum::WordSum(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw DomainError("word sum requires a generator table");
}

void WordSum::add_letters(Letters letters, const Scalar& coeff) {
  if (coeff == 0) return;
  const std::size_t n = letters.size();
  std::vector<Degree> shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = parity_of(*table_, letters[i]) + 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return letters[static_cast<std::size_t>(a)] < letters[static_cast<std::size_t>(b)];
  });
  Letters sorted;
  sorted.reserve(n);
  for (int i : perm) sorted.push_back(letters[static_cast<std::size_t>(i)]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // v ^ v = -v ^ v when the shifted degree of v is even
    if (sorted[i] == sorted[i + 1] && parity(shifted[static_cast<std::size_t>(perm[i])]) == 0) return;
  }
  const Scalar c = graded_sign(shifted, std::span<const int>(perm)) > 0 ? coeff : Scalar(-coeff);
  auto [it, inserted] = terms_.try_emplace(std::move(sorted), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void WordSum::add_word(const Word& w, const Scalar& coeff) {
  if (coeff == 0 || any_zero(w.letters)) return;
  // expand multilinearly, one letter position at a time
  std::vector<std::pair<Letters, Scalar>> partial{{Letters{}, coeff}};
  for (const auto& letter : w.letters) {
    if (*letter.table() != *table_) throw DomainError("word sum: letter from another generator table");
    std::vector<std::pair<Letters, Scalar>> next;
    next.reserve(partial.size() * letter.size());
    for (const auto& [ls, c] : partial) {
      for (const auto& [m, mc] : letter.terms()) {
        auto extended = ls;
        extended.push_back(m);
        next.emplace_back(std::move(extended), c * mc);
      }
    }
    partial = std::move(next);
  }
  for (auto& [ls, c] : partial) add_letters(std::move(ls), c);
}

WordSum WordSum::from_word(const Word& w) {
  if (w.letters.empty()) throw DomainError("word: the empty word is not allowed");
  WordSum s(w.letters.front().table());
  s.add_word(w);
  return s;
}

WordSum& WordSum::operator+=(const WordSum& other) {
  for (const auto& [ls, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(ls, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

WordSum& WordSum::operator-=(const WordSum& other) {
  WordSum neg = other;
  neg *= -1;
  return *this += neg;
}

WordSum& WordSum::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [ls, v] : terms_) v *= c;
  return *this;
}

bool WordSum::operator==(const WordSum& other) const {
  return *table_ == *other.table_ && terms_ == other.terms_;
}

Word to_word(const TablePtr& table, const WordSum::Letters& letters) {
  std::vector<Element> ls;
  ls.reserve(letters.size());
  for (const auto& m : letters) ls.push_back(Element::monomial(table, m));
  return Word(std::move(ls));
}

std::vector<CoproductTerm> coproduct(const Word& w) {
  std::vector<CoproductTerm> out;
  const std::size_t n = w.size();
  if (n < 2) return out;
  const auto shifted = shifted_parities(w.letters, "coproduct");
  const std::span<const Element> letters(w.letters);
  for (std::size_t k = 1; k < n; ++k) {
    for (const auto& sigma : unshuffles(static_cast<int>(k), static_cast<int>(n))) {
      out.push_back({Word(take(letters, sigma.perm, 0, k)), Word(take(letters, sigma.perm, k, n)),
                     graded_sign(shifted, sigma)});
    }
  }
  return out;
}

TensorSum coproduct(const WordSum& w) {
  TensorSum out;
  for (const auto& [ls, c] : w.terms()) {
    for (const auto& term : coproduct(to_word(w.table(), ls))) {
      const WordSum left = WordSum::from_word(term.left);
      const WordSum right = WordSum::from_word(term.right);
      for (const auto& [l, lc] : left.terms()) {
        for (const auto& [r, rc] : right.terms()) {
          const Scalar v = c * lc * rc * term.sign;
          auto [it, inserted] = out.try_emplace({l, r}, v);
          if (!inserted) {
            it->second += v;
            if (it->second == 0) out.erase(it);
          }
        }
      }
    }
  }
  return out;
}

Element shifted_bracket(const Operator& op, std::span<const Element> args) {
  const std::size_t k = args.size();
  if (k == 0) throw DomainError("shifted_bracket: needs at least one argument");
  if (any_zero(args)) return Element(op.table());
  const auto p = unshifted_parities(args, "shifted_bracket");
  long e = static_cast<long>(k * (k + 1) / 2 + 1);
  for (std::size_t i = 0; i < k; ++i) e += static_cast<long>(p[i]) * static_cast<long>(k - 1 - i);
  Element f = koszul_bracket(op, args);
  return sign_pow(e) > 0 ? f : -f;
}

WordSum extend_coderivation(const Operator& op, std::size_t k, const Word& w) {
  if (k == 0) throw DomainError("extend_coderivation: arity must be at least 1");
  WordSum out(op.table());
  const std::size_t n = w.size();
  if (n < k) return out;
  const auto shifted = shifted_parities(w.letters, "extend_coderivation");
  const std::span<const Element> letters(w.letters);
  // the k consumed letters pass the n-k remaining ones
  const int length_sign = sign_pow(static_cast<long>(k * (n - k)));
  for (const auto& sigma : unshuffles(static_cast<int>(k), static_cast<int>(n))) {
    const auto selected = take(letters, sigma.perm, 0, k);
    Element lead = shifted_bracket(op, selected);
    if (lead.is_zero()) continue;
    std::vector<Element> ls{std::move(lead)};
    for (auto& rest : take(letters, sigma.perm, k, n)) ls.push_back(std::move(rest));
    out.add_word(Word(std::move(ls)), graded_sign(shifted, sigma) * length_sign);
  }
  return out;
}

WordSum extend_coderivation(const Operator& op, std::size_t k, const WordSum& w) {
  WordSum out(op.table());
  for (const auto& [ls, c] : w.terms()) {
    WordSum part = extend_coderivation(op, k, to_word(w.table(), ls));
    part *= c;
    out += part;
  }
  return out;
}

Element linfty_relation(const Operator& op, std::span<const Element> args) {
  const std::size_t n = args.size();
  if (n == 0) throw DomainError("linfty_relation: needs at least one argument");
  const auto shifted = shifted_parities(args, "linfty_relation");
  Element result(op.table());
  if (any_zero(args)) return result;
  for (std::size_t k = 1; k <= n; ++k) {
    const int prefix = sign_pow(static_cast<long>(k * (n - k)));
    for (const auto& sigma : unshuffles(static_cast<int>(k), static_cast<int>(n))) {
      Element inner = shifted_bracket(op, take(args, sigma.perm, 0, k));
      if (inner.is_zero()) continue;
      std::vector<Element> outer{std::move(inner)};
      for (auto& rest : take(args, sigma.perm, k, n)) outer.push_back(std::move(rest));
      const Element term = shifted_bracket(op, outer);
      if (prefix * graded_sign(shifted, sigma) > 0) {
        result += term;
      } else {
        result -= term;
      }
    }
  }
  return result;
}

Element symmetric_relation(const Operator& op, std::span<const Element> args) {
  const std::size_t n = args.size();
  if (n == 0) throw DomainError("symmetric_relation: needs at least one argument");
  const auto p = unshifted_parities(args, "symmetric_relation");
  Element result(op.table());
  if (any_zero(args)) return result;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& sigma : unshuffles(static_cast<int>(k), static_cast<int>(n))) {
      Element inner = koszul_bracket(op, take(args, sigma.perm, 0, k));
      if (inner.is_zero()) continue;
      std::vector<Element> outer{std::move(inner)};
      for (auto& rest : take(args, sigma.perm, k, n)) outer.push_back(std::move(rest));
      const Element term = koszul_bracket(op, outer);
      if (koszul_sign(p, sigma) > 0) {
        result += term;
      } else {
        result -= term;
      }
    }
  }
  return result;
}

std::vector<RelationReport> verify_linfty(const Operator& op, std::size_t n_max,
                                          const Budget& budget, TupleMode mode) {
  if (!is_odd(op)) {
    throw DomainError("verify_linfty: the operator must be odd (every degree component of odd degree)");
  }
  std::vector<Element> pool;
  std::uint32_t max_letter = 0;
  for (auto& m : monomials_up_to(*op.table(), budget.max_degree)) {
    max_letter = std::max(max_letter, m.total());
    pool.push_back(Element::monomial(op.table(), std::move(m)));
  }
  std::vector<RelationReport> reports;
  for (std::size_t n = 1; n <= n_max; ++n) {
    RelationReport r;
    r.n = n;
    r.max_letter_degree = max_letter;
    const auto sel = select_tuples(pool.size(), n, budget, mode);
    r.candidates = sel.candidates;
    r.exhaustive = sel.exhaustive;
    for (const auto& idx : sel.tuples) {
      ++r.tuples_tested;
      std::vector<Element> args;
      args.reserve(n);
      for (auto i : idx) args.push_back(pool[i]);
      Element v = linfty_relation(op, args);
      if (!v.is_zero()) {
        r.passed = false;
        r.witness = std::move(args);
        r.residual = std::move(v);
        break;
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace bvk
