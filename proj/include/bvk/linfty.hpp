#pragma once

// The exterior coalgebra on the suspension of A, the coderivations built from
// the higher brackets, and the relation family that encodes Q o Q = 0.
//
// Letters live in sA with shifted degree |a| + 1. Only parities enter the
// signs, so letters need to be parity-homogeneous.

#include "bvk/brackets.hpp"
#include "bvk/budget.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace bvk {

/// a_1 ^ ... ^ a_n in the exterior coalgebra on sA; n >= 1.
struct Word {
  std::vector<Element> letters;

  Word() = default;
  explicit Word(std::vector<Element> ls);
  [[nodiscard]] std::size_t size() const noexcept { return letters.size(); }
};

/// Linear combination of words of monomial letters, letters sorted by the
/// monomial order with the exterior sign. A repeated letter of even shifted
/// degree (odd |a|) makes the word vanish.
class WordSum {
 public:
  using Letters = std::vector<Monomial>;
  using TermMap = std::map<Letters, Scalar>;

  explicit WordSum(TablePtr table);

  /// Multilinear expansion of a word into canonical monomial words.
  static WordSum from_word(const Word& w);

  [[nodiscard]] const TablePtr& table() const noexcept { return table_; }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds coeff * (m_1 ^ ... ^ m_n), canonicalizing the order.
  void add_letters(Letters letters, const Scalar& coeff);
  void add_word(const Word& w, const Scalar& coeff = 1);

  WordSum& operator+=(const WordSum& other);
  WordSum& operator-=(const WordSum& other);
  WordSum& operator*=(const Scalar& c);
  bool operator==(const WordSum& other) const;

 private:
  TablePtr table_;
  TermMap terms_;
};

/// Letter word of a canonical key.
Word to_word(const TablePtr& table, const WordSum::Letters& letters);

struct CoproductTerm {
  Word left;
  Word right;
  int sign = 1;
};

/// Reduced unshuffle coproduct; empty for a single letter.
std::vector<CoproductTerm> coproduct(const Word& w);

/// Sum of left (x) right tensors in canonical form.
using TensorSum = std::map<std::pair<WordSum::Letters, WordSum::Letters>, Scalar>;
TensorSum coproduct(const WordSum& w);

/// The k-th bracket on sA:
///   l_k(a_1..a_k) = c_k (-1)^{sum_i |a_i|(k-i)} F_D^k(a_1..a_k),
///   c_k = (-1)^{k(k+1)/2 + 1},
/// so that l_1 = D and l_2 is the BV bracket (-1)^{|a|} F_D^2.
Element shifted_bracket(const Operator& op, std::span<const Element> args);

/// Q_k extended to words of length n >= k:
///   (-1)^{k(n-k)} sum_{sigma in Sh(k,n-k)} sign(sigma) l_k(a_s(1)..a_s(k)) ^ a_s(k+1) ^ .. ^ a_s(n),
/// zero for n < k. The factor (-1)^{k(n-k)} gives every Q_k the same parity
/// in the (degree, length) bigrading, so Q = sum_k Q_k squares to a
/// coderivation and the length-one part of Q o Q is linfty_relation.
WordSum extend_coderivation(const Operator& op, std::size_t k, const Word& w);
/// Same, extended linearly to a word sum.
WordSum extend_coderivation(const Operator& op, std::size_t k, const WordSum& w);

/// Left-hand side of the n-th relation
///   sum_k (-1)^{k(n-k)} sum_{sigma in Sh(k,n-k)} sign(sigma)
///         l_{n-k+1}(l_k(a_s(1)..a_s(k)), a_s(k+1)..a_s(n)),
/// sign(sigma) the exterior sign on shifted degrees; zero when it holds.
Element linfty_relation(const Operator& op, std::span<const Element> args);

/// The same family in symmetric form on unshifted degrees:
///   sum_k sum_sigma eps(sigma) F^{n-k+1}(F^k(a_s(1)..a_s(k)), a_s(k+1)..a_s(n)).
/// Vanishes exactly when linfty_relation does.
Element symmetric_relation(const Operator& op, std::span<const Element> args);

struct RelationReport {
  std::size_t n = 0;
  std::size_t tuples_tested = 0;
  std::size_t candidates = 0;
  bool exhaustive = false;
  /// Largest total exponent among enumerated letters.
  std::uint32_t max_letter_degree = 0;
  bool passed = true;
  std::optional<std::vector<Element>> witness;
  std::optional<Element> residual;
};

/// Checks relations n = 1..n_max on monomial tuples (the unit included)
/// within the budget. Throws DomainError unless the operator is odd.
std::vector<RelationReport> verify_linfty(const Operator& op, std::size_t n_max,
                                          const Budget& budget,
                                          TupleMode mode = TupleMode::Ordered);

}  // namespace bvk
