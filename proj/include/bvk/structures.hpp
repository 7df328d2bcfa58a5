#pragma once
// Structure-level checks: Gerstenhaber axioms, the order/degree split of a
// square-zero operator, the derivation lemma, the BV-infinity definition, and
// the BV structure induced on d-cohomology.
//
// Checkers never throw on a mathematical failure; they return report entries
// with witnesses. Only malformed input raises DomainError.

#include "bvk/brackets.hpp"
#include "bvk/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bvk {

enum class Verdict { Pass, Fail, Untested };

const char* to_string(Verdict v) noexcept;

struct CheckEntry {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::size_t tested = 0;
  std::string detail;
  /// Arguments of a failing (or, for existence claims, the exhibited) case.
  std::optional<std::vector<Element>> witness;
  std::optional<Element> residual;
  std::optional<Operator> operator_residual;
};

struct Report {
  std::vector<CheckEntry> entries;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] bool any_failed() const;
  [[nodiscard]] bool any_untested() const;
  [[nodiscard]] const CheckEntry* find(const std::string& name) const;
  void append(const Report& other, const std::string& prefix = "");
};

using BinaryOp = std::function<Element(const Element&, const Element&)>;

/// A product and a bracket to be checked against the Gerstenhaber axioms in
/// the shifted grading s(a) = |a| + shift:
///   antisymmetry [a,b] = -(-1)^{s(a)s(b)} [b,a]
///   Jacobi       [a,[b,c]] = [[a,b],c] + (-1)^{s(a)s(b)} [b,[a,c]]
///   Leibniz      [a,bc] = [a,b]c + (-1)^{|b||c|} [a,c]b   (stored degrees)
///   degrees      s(ab) = s(a)+s(b)+product_offset, s([a,b]) = s(a)+s(b)+bracket_offset
/// plus graded commutativity and associativity of the product. When
/// `normalize` is set, both sides are compared after normalization (used on
/// cohomology, where it picks the canonical representative of a class).
struct GerstenhaberOps {
  BinaryOp bracket;
  BinaryOp product;
  int shift = -1;
  int product_offset = 1;
  int bracket_offset = 0;
  std::function<Element(const Element&)> normalize;
};

/// Runs every axiom on pairs and triples drawn from `pool` (homogeneous
/// elements), exhaustively when the budget's tuple count allows.
Report check_gerstenhaber(const GerstenhaberOps& ops, const std::vector<Element>& pool,
                          const Budget& budget);

/// Homogeneous monomials of total exponent <= max_degree (unit included).
std::vector<Element> monomial_pool(const TablePtr& table, std::uint32_t max_degree);

struct SplitComponent {
  unsigned n = 0;  // order index; degree 3 - 2n
  Degree degree = 0;
  Operator op;
  OrderCertificate certificate;
};

struct SplitResult {
  std::vector<SplitComponent> components;
  /// Components whose degree is not 3 - 2n for some n >= 1.
  std::map<Degree, Operator> residual_components;
  bool residual = false;
};

/// Splits a square-zero D by degree into D_n of degree 3 - 2n and certifies
/// order <= n for each. Throws DomainError when D^2 != 0 or when the degree +1
/// part has order above 1.
SplitResult degree_split(const Operator& D, const Budget& budget);

/// The graded pieces of D^2 = 0: for every s >= 2, sum_{a+b=s} D_a D_b = 0 as
/// an exact operator identity. Entries are named "identity s=<s>".
Report split_identities(const SplitResult& split);

/// Clauses of the derivation lemma for square-zero D with bracket
/// [a,b] = (-1)^{|a|} F_D^2(a,b):
///   (i)   D[a,b] = [Da,b] + (-1)^{|a|+1} [a,Db] on sampled pairs
///   (ii)  a product-Leibniz failure witness for D when D has order >= 2
///   (iii) the degree +1 part D_1 satisfies product Leibniz
///   (iv)  a bracket-derivation failure witness for D_1 when one exists
Report check_derivation_lemma(const Operator& D, const Budget& budget);

/// Def. of a commutative BV-infinity algebra: d of degree +1 (or zero),
/// d^2 = 0, d a product derivation, D odd and square zero, every degree
/// component of D - d of negative degree.
Report check_bvinfty(const Operator& d, const Operator& D, const Budget& budget);

/// Weight range of a cohomology computation. Slices outside [min_weight,
/// max_weight] are computed on demand when needed; slices above cap_weight
/// are never computed and the assertions needing them are untested.
struct Window {
  int min_weight = 0;
  int max_weight = 3;
  std::optional<int> cap_weight;
};

struct SliceKey {
  Degree degree = 0;
  int weight = 0;
  auto operator<=>(const SliceKey&) const = default;
};

struct Slice {
  SliceKey key;
  std::vector<Monomial> basis;
  std::size_t cycles = 0;
  std::size_t boundaries = 0;
  /// Cycles independent modulo boundaries; dim H of the slice is their count.
  std::vector<Element> representatives;
  bool truncated = false;
};

/// H(A, d) by (degree, weight) slices with exact arithmetic. d must shift
/// weight uniformly and satisfy d^2 = 0.
class Cohomology {
 public:
  Cohomology(Operator d, std::vector<int> weights, Window window);

  [[nodiscard]] const Operator& differential() const noexcept { return d_; }
  [[nodiscard]] const std::vector<int>& weights() const noexcept { return weights_; }
  [[nodiscard]] const Window& window() const noexcept { return window_; }
  [[nodiscard]] int weight_shift() const noexcept { return shift_; }

  /// Slices inside the window with nonempty chain basis, ordered by key.
  [[nodiscard]] std::vector<const Slice*> window_slices() const;
  /// Computes the slice on demand; truncated when above the cap.
  const Slice& slice(SliceKey key) const;

  /// Coordinates of a cycle in the representatives of its slices, keyed by
  /// slice; nullopt if some component is not a cycle or a needed slice is
  /// truncated (see last_truncated()).
  [[nodiscard]] std::optional<std::map<SliceKey, Vector>> classify(const Element& a) const;
  /// The canonical representative sum_i c_i rep_i of the class of a cycle.
  [[nodiscard]] std::optional<Element> normalize(const Element& a) const;
  [[nodiscard]] bool is_boundary(const Element& a) const;
  [[nodiscard]] bool last_truncated() const noexcept { return last_truncated_; }

  /// Splits an element into its (degree, weight) components.
  [[nodiscard]] std::map<SliceKey, Element> components(const Element& a) const;

 private:
  struct SliceData {
    Slice slice;
    std::map<Monomial, std::size_t> index;
    std::unique_ptr<EchelonBasis> classes;  // boundaries as relations, reps as generators
  };
  const SliceData& data(SliceKey key) const;
  int weight_of(const Monomial& m) const;

  Operator d_;
  std::vector<int> weights_;
  Window window_;
  int shift_ = 0;
  mutable std::map<SliceKey, std::unique_ptr<SliceData>> cache_;
  mutable bool last_truncated_ = false;
};

/// Per-slice dimensions of H inside the window.
std::vector<std::pair<SliceKey, std::size_t>> cohomology_dimensions(const Cohomology& h);

struct InducedImage {
  SliceKey source;
  std::size_t rep = 0;
  /// Class of D_2(rep), by target slice.
  std::map<SliceKey, Vector> image;
};

struct InducedBvReport {
  Report checks;
  Operator d2;
  std::vector<InducedImage> images;
};

/// Extracts D_2 (the degree -1 part of D), checks d D_2 + D_2 d = 0, and
/// verifies on H(A, d) within the window that the induced operator is well
/// defined, squares to zero, has order <= 2 for the induced product, and that
/// the induced bracket satisfies the Gerstenhaber axioms. Always returns a
/// report; a failing BV-infinity check is recorded and the rest is skipped.
InducedBvReport induced_bv(const Operator& d, const Operator& D, const std::vector<int>& weights,
                           const Window& window, const Budget& budget);

}  // namespace bvk
