#pragma once

// Exact scalars, degrees, and the sign machinery shared by every module.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvk {

/// Exact rational coefficient, always kept in canonical reduced form.
using Scalar = mpq_class;

/// Integer grading of elements and operators.
using Degree = int;

/// Raised when an operation is called outside of its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 0 for even degree, 1 for odd degree (also for negative degrees).
constexpr int parity(Degree d) noexcept { return d & 1; }

/// (-1)^e as an int.
constexpr int sign_pow(long e) noexcept { return (e & 1) ? -1 : 1; }

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);

/// An unshuffle of type (k, n-k), stored 0-based: `perm[i]` is the index of the
/// letter placed at position i. Increasing on [0, split) and on [split, n).
struct Unshuffle {
  std::vector<int> perm;
  int split = 0;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(perm.size()); }
  bool operator==(const Unshuffle&) const = default;
};

/// All unshuffles of type (k, n-k) in lexicographic order of `perm`.
/// Requires 1 <= k <= n.
std::vector<Unshuffle> unshuffles(int k, int n);

/// Number of inversions of an arbitrary permutation.
int inversion_count(std::span<const int> perm);

/// Combined permutation/Koszul factor (-1)^sigma eps(sigma) defined by
/// v_1 ^ ... ^ v_n = sign * v_{perm[0]} ^ ... ^ v_{perm[n-1]}:
/// each inversion of two letters of degrees p, q contributes -(-1)^{pq}.
int graded_sign(std::span<const Degree> degrees, std::span<const int> perm);
int graded_sign(std::span<const Degree> degrees, const Unshuffle& sigma);

/// Pure Koszul factor eps(sigma): each inversion contributes (-1)^{pq}.
int koszul_sign(std::span<const Degree> degrees, std::span<const int> perm);
int koszul_sign(std::span<const Degree> degrees, const Unshuffle& sigma);

}  // namespace bvk
