#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bvk {

/// Test budget for enumerated checks: monomials up to `max_degree` total
/// exponent, at most `max_tuples` argument tuples, `seed` for sampling when the
/// candidate set is larger than `max_tuples`.
struct Budget {
  std::uint32_t max_degree = 2;
  std::size_t max_tuples = 500;
  std::uint64_t seed = 1;
};

enum class TupleMode {
  Ordered,   // all index tuples
  Multiset,  // nondecreasing index tuples
};

struct TupleSelection {
  std::vector<std::vector<std::size_t>> tuples;
  /// Size of the full candidate set (saturates at SIZE_MAX).
  std::size_t candidates = 0;
  bool exhaustive = false;
};

/// Deterministic tuple selection over a pool of `pool` items: exhaustive when
/// the candidate count fits the budget, otherwise a seeded sample of distinct
/// tuples in first-drawn order.
TupleSelection select_tuples(std::size_t pool, std::size_t arity, const Budget& budget,
                             TupleMode mode);

}  // namespace bvk
