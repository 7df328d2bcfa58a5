#pragma once

// Higher brackets of an operator with respect to the algebra product, in the
// recursive (Akman) form and the unshuffle-sum (Koszul) form, plus the order
// certificate and the BV bracket.
//
// Every sign in these formulas reads only parities, so arguments and the
// operator need to be parity-homogeneous (degree-homogeneous is the common
// case). Zero arguments are allowed and give zero.

#include "bvk/budget.hpp"
#include "bvk/diffop.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bvk {

/// F_D^n by the recursion
///   F^{n+1}(a_1..a_n, b) = F^n(a_1..a_{n-1}, a_n b) - F^n(a_1..a_n) b
///                          - (-1)^{|a_n|(|a_1|+..+|a_{n-1}|+|D|)} a_n F^n(a_1..a_{n-1}, b)
/// with F^1 = D.
Element akman_bracket(const Operator& op, std::span<const Element> args);

/// F_D^n as sum over k = 1..n and unshuffles sigma in Sh(k, n-k) of
/// (-1)^{n-k} eps(sigma) D(a_s(1)...a_s(k)) * a_s(k+1)...a_s(n).
Element koszul_bracket(const Operator& op, std::span<const Element> args);

/// (-1)^{|a|} F_delta^2(a, b).
Element bv_bracket(const Operator& delta, const Element& a, const Element& b);

/// Parity of a nonzero parity-homogeneous element; throws DomainError otherwise.
int require_parity(const Element& a, const char* what);
/// Parity of a parity-homogeneous operator (0 for the zero operator).
int require_parity(const Operator& op, const char* what);

struct OrderCertificate {
  unsigned claimed_order = 0;
  unsigned structural_bound = 0;
  bool degenerate = false;
  /// The operator had D(1) != 0 and was certified as D - D(1)*.
  bool normalized = false;

  std::size_t tuples_tested = 0;
  std::size_t candidates = 0;
  bool exhaustive = false;
  bool passed = false;
  /// Arity k+1 tuple with nonzero bracket, on failure.
  std::optional<std::vector<Element>> failure_witness;
  std::optional<Element> failure_value;

  /// A nonzero arity-k bracket was found (order is exactly k). For k = 0 this
  /// means D(1) != 0.
  bool sharp = false;
  std::size_t sharpness_tested = 0;
  std::optional<std::vector<Element>> sharpness_witness;
};

/// Certifies order <= k: every enumerated arity-(k+1) tuple of non-unit
/// monomials within the budget has vanishing bracket.
OrderCertificate akman_order_check(const Operator& op, unsigned k, const Budget& budget);

/// Smallest k <= max_k whose certificate passes; the last failing certificate
/// if none does.
OrderCertificate akman_order(const Operator& op, unsigned max_k, const Budget& budget);

}  // namespace bvk
