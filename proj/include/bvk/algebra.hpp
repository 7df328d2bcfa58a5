#pragma once

// Free graded-commutative algebra on finitely many integer-graded generators:
// polynomial in the even generators, exterior in the odd ones.

#include "bvk/graded.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bvk {

struct Generator {
  std::string name;
  Degree degree = 0;
};

/// Ordered generator list. The order fixes the canonical monomial order.
class GeneratorTable {
 public:
  explicit GeneratorTable(std::vector<Generator> generators);

  [[nodiscard]] std::size_t size() const noexcept { return generators_.size(); }
  [[nodiscard]] const Generator& operator[](std::size_t i) const { return generators_.at(i); }
  [[nodiscard]] Degree degree(std::size_t i) const { return generators_.at(i).degree; }
  [[nodiscard]] bool is_odd(std::size_t i) const { return parity(degree(i)) == 1; }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const;
  [[nodiscard]] const std::vector<Generator>& generators() const noexcept { return generators_; }

  bool operator==(const GeneratorTable& other) const;

 private:
  std::vector<Generator> generators_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<Generator> generators);

/// Exponent vector over a GeneratorTable. Odd generators have exponent 0 or 1.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  [[nodiscard]] std::uint32_t total() const noexcept;
  [[nodiscard]] bool is_unit() const noexcept { return total() == 0; }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

Degree degree_of(const GeneratorTable& table, const Monomial& m);
/// Sum of exponents of odd generators mod 2.
int parity_of(const GeneratorTable& table, const Monomial& m);

/// Product a*b brought into table order. Returns the sign (+1/-1), or 0 when
/// an odd generator would appear twice; `out` is set only for nonzero sign.
int multiply_monomials(const GeneratorTable& table, const Monomial& a, const Monomial& b,
                       Monomial& out);

/// Finite linear combination of monomials with nonzero rational coefficients.
class Element {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  explicit Element(TablePtr table);

  static Element unit(TablePtr table);
  static Element monomial(TablePtr table, Monomial m, Scalar coeff = 1);
  static Element generator(TablePtr table, const std::string& name);

  [[nodiscard]] const TablePtr& table() const noexcept { return table_; }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  /// Degree when nonzero and homogeneous.
  [[nodiscard]] std::optional<Degree> degree() const;
  /// Parity when nonzero and all monomials share one parity.
  [[nodiscard]] std::optional<int> parity() const;

  void add_term(const Monomial& m, const Scalar& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Scalar& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  Element operator-() const;

  bool operator==(const Element& other) const;

 private:
  void check_same_table(const Element& other) const;

  TablePtr table_;
  TermMap terms_;
};

/// Graded-commutative product with Koszul signs.
Element multiply(const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

/// Homogeneous components keyed by degree; summing them returns the input.
std::map<Degree, Element> grade_decompose(const Element& a);

/// Left partial derivative with respect to generator `index`; a graded
/// derivation of degree -|g| acting from the left.
Element partial_derivative(const Element& a, std::size_t index);

/// All monomials with total exponent <= max_total, ordered by total exponent
/// and then lexicographically.
std::vector<Monomial> monomials_up_to(const GeneratorTable& table, std::uint32_t max_total);

/// All monomials of the given weight, where each generator carries a
/// nonnegative weight (even generators must have positive weight).
std::vector<Monomial> monomials_of_weight(const GeneratorTable& table,
                                          const std::vector<int>& weights, int weight);

std::string to_string(const GeneratorTable& table, const Monomial& m);
std::string to_string(const Element& a);

/// Parses "-3/2*x^2*xi + y - 1". Factors multiply left to right with the
/// algebra product, so "xi2*xi1" equals "-xi1*xi2".
Element parse_element(TablePtr table, const std::string& text);

}  // namespace bvk
