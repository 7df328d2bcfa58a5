#pragma once
// Dense exact linear algebra over the rationals: reduced row echelon form,
// kernels, and an incremental echelon basis for quotients.

#include "bvk/graded.hpp"

#include <optional>
#include <vector>

namespace bvk {

using Vector = std::vector<Scalar>;

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  [[nodiscard]] const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  [[nodiscard]] Vector column(std::size_t c) const;
  [[nodiscard]] Vector apply(const Vector& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Kernel basis read off the reduced form: one vector per free column, with
/// a 1 in that column. Deterministic for a given matrix.
std::vector<Vector> kernel_basis(const Matrix& m);

bool is_zero(const Vector& v);

/// Span of vectors kept in echelon form. Every stored vector carries a tag,
/// the coordinates it contributes to a quotient basis. Vectors added with
/// add_relation have a zero tag, so reducing modulo the stored span yields
/// coordinates in the quotient.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, std::size_t tag_dim) : dim_(dim), tag_dim_(tag_dim) {}

  /// Adds a vector that is zero in the quotient. Returns true if independent.
  bool add_relation(const Vector& v);
  /// Adds a vector standing for quotient basis element `tag_index`.
  /// Returns false (and stores nothing) if it is already in the span.
  bool add_generator(const Vector& v, std::size_t tag_index);

  /// Tag coordinates of v when v lies in the span, nullopt otherwise.
  [[nodiscard]] std::optional<Vector> coordinates(const Vector& v) const;
  [[nodiscard]] bool contains(const Vector& v) const { return coordinates(v).has_value(); }
  [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

 private:
  struct Row {
    std::size_t pivot;
    Vector v;
    Vector tag;
  };
  // v minus stored rows, with the tags accumulated.
  void reduce(Vector& v, Vector& tag) const;
  bool insert(Vector v, Vector tag);

  std::size_t dim_;
  std::size_t tag_dim_;
  std::vector<Row> rows_;  // sorted by pivot
};

}  // namespace bvk
