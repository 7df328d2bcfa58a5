#include "bvk/linalg.hpp"

#include <algorithm>

namespace bvk {

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DomainError("matrix apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] != 0 && at(r, c) != 0) out[r] += at(r, c) * v[c];
    }
  }
  return out;
}

RrefResult rref(Matrix m) {
  RrefResult res;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
    }
    const Scalar inv = 1 / m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Scalar f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m.at(row, c) != 0) m.at(r, c) -= f * m.at(row, c);
      }
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.reduced = std::move(m);
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced.at(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

void EchelonBasis::reduce(Vector& v, Vector& tag) const {
  for (const auto& row : rows_) {
    if (v[row.pivot] == 0) continue;
    const Scalar f = v[row.pivot];
    for (std::size_t i = row.pivot; i < dim_; ++i) {
      if (row.v[i] != 0) v[i] -= f * row.v[i];
    }
    for (std::size_t i = 0; i < tag_dim_; ++i) {
      if (row.tag[i] != 0) tag[i] += f * row.tag[i];
    }
  }
}

bool EchelonBasis::insert(Vector v, Vector tag) {
  if (v.size() != dim_) throw DomainError("echelon basis: dimension mismatch");
  // tag holds the coordinates of the original vector; v - sum f_i row_i is
  // stored with tag - sum f_i tag_i.
  Vector acc(tag_dim_);
  reduce(v, acc);
  const auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return s != 0; });
  if (it == v.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
  const Scalar inv = 1 / v[pivot];
  for (std::size_t i = 0; i < tag_dim_; ++i) tag[i] = (tag[i] - acc[i]) * inv;
  for (auto& x : v) x *= inv;
  // keep rows fully reduced against the new pivot
  for (auto& row : rows_) {
    if (row.v[pivot] == 0) continue;
    const Scalar f = row.v[pivot];
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] != 0) row.v[i] -= f * v[i];
    }
    for (std::size_t i = 0; i < tag_dim_; ++i) {
      if (tag[i] != 0) row.tag[i] -= f * tag[i];
    }
  }
  const auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                    [](const Row& r, std::size_t p) { return r.pivot < p; });
  rows_.insert(pos, Row{pivot, std::move(v), std::move(tag)});
  return true;
}

bool EchelonBasis::add_relation(const Vector& v) { return insert(v, Vector(tag_dim_)); }

bool EchelonBasis::add_generator(const Vector& v, std::size_t tag_index) {
  if (tag_index >= tag_dim_) throw DomainError("echelon basis: tag index out of range");
  Vector tag(tag_dim_);
  tag[tag_index] = 1;
  return insert(v, std::move(tag));
}

std::optional<Vector> EchelonBasis::coordinates(const Vector& v) const {
  if (v.size() != dim_) throw DomainError("echelon basis: dimension mismatch");
  Vector r = v;
  Vector tag(tag_dim_);
  reduce(r, tag);
  if (!is_zero(r)) return std::nullopt;
  return tag;
}

}  // namespace bvk
