#pragma once

// Differential operators on the free algebra in normal form: each term is
// "multiply by a monomial after applying a product of partial derivatives".

#include "bvk/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvk {

/// Key of one normal-form term: coeff * multiplier * d^derivs, where
/// d^derivs = d_0^{a_0} d_1^{a_1} ... d_{n-1}^{a_{n-1}} in table order
/// (the rightmost factor acts first).
struct OpKey {
  Monomial multiplier;
  Monomial derivs;

  auto operator<=>(const OpKey&) const = default;
  bool operator==(const OpKey&) const = default;
};

struct OpTerm {
  Scalar coeff;
  Monomial multiplier;
  Monomial derivs;
};

class Operator {
 public:
  using TermMap = std::map<OpKey, Scalar>;

  explicit Operator(TablePtr table);

  static Operator identity(TablePtr table);
  static Operator multiplication(const Element& by);
  static Operator derivative(TablePtr table, const std::string& generator);
  static Operator term(TablePtr table, const Scalar& coeff, Monomial multiplier, Monomial derivs);

  [[nodiscard]] const TablePtr& table() const noexcept { return table_; }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::vector<OpTerm> term_list() const;

  /// Adds a term. Odd derivative exponents above 1 are rejected; odd
  /// multiplier exponents above 1 make the term vanish.
  void add_term(const Monomial& multiplier, const Monomial& derivs, const Scalar& coeff);

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(const Scalar& c);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Scalar& c, Operator a) { return a *= c; }
  Operator operator-() const;

  bool operator==(const Operator& other) const;

 private:
  void check_same_table(const Operator& other) const;

  TablePtr table_;
  TermMap terms_;
};

/// |multiplier| - sum of derivative exponents times generator degrees.
Degree term_degree(const GeneratorTable& table, const OpKey& key);

Element apply(const Operator& op, const Element& a);

/// Normal form of the composite map d o e (e acts first).
Operator compose(const Operator& d, const Operator& e);

/// d o e + e o d.
Operator anticommutator(const Operator& d, const Operator& e);

std::map<Degree, Operator> degree_components(const Operator& op);

/// Operator parity when every term has the same parity of degree.
std::optional<int> operator_parity(const Operator& op);

struct StructuralOrder {
  unsigned order = 0;
  /// Set for the zero operator, whose order is reported as 0 by convention.
  bool degenerate = false;
};

/// Largest number of derivatives in any term.
StructuralOrder structural_order(const Operator& op);

/// True iff every degree component has odd degree (vacuously for zero).
bool is_odd(const Operator& op);

/// D(1): the pure multiplication part of D.
Element constant_term(const Operator& op);

struct SquareZeroResult {
  bool square_zero = true;
  Operator square;
  /// On failure, a monomial m with D(D(m)) != 0.
  std::optional<Monomial> witness;
};

SquareZeroResult is_square_zero(const Operator& op);

/// Term lines "term <coeff> mult <e...> deriv <e...>", parseable by the spec reader.
std::vector<std::string> to_term_lines(const Operator& op);
/// Human-readable sum such as "x1*D(x1,xi1) - 2*xi1".
std::string to_string(const Operator& op);

}  // namespace bvk
