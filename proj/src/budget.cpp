#include "bvk/budget.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace bvk {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::size_t count_candidates(std::size_t pool, std::size_t arity, TupleMode mode) {
  if (mode == TupleMode::Ordered) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < arity; ++i) c = saturating_mul(c, pool);
    return c;
  }
  // multisets: binomial(pool + arity - 1, arity)
  if (pool == 0) return arity == 0 ? 1 : 0;
  std::size_t c = 1;
  for (std::size_t i = 1; i <= arity; ++i) {
    const std::size_t num = pool + i - 1;
    // c * num / i stays integral at every step
    if (c > kSaturated / num) return kSaturated;
    c = c * num / i;
  }
  return c;
}

void enumerate(std::size_t pool, std::size_t arity, TupleMode mode,
               std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> t(arity, 0);
  if (pool == 0 && arity > 0) return;
  while (true) {
    out.push_back(t);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (t[i] + 1 < pool) {
        ++t[i];
        const std::size_t fill = mode == TupleMode::Multiset ? t[i] : 0;
        for (std::size_t j = i + 1; j < arity; ++j) t[j] = fill;
        break;
      }
      if (i == 0) return;
    }
    if (arity == 0) return;
  }
}

}  // namespace

TupleSelection select_tuples(std::size_t pool, std::size_t arity, const Budget& budget,
                             TupleMode mode) {
  TupleSelection sel;
  sel.candidates = count_candidates(pool, arity, mode);
  if (sel.candidates <= budget.max_tuples) {
    enumerate(pool, arity, mode, sel.tuples);
    sel.exhaustive = true;
    return sel;
  }
  std::mt19937_64 rng(budget.seed);
  std::set<std::vector<std::size_t>> seen;
  const std::size_t attempts_cap = budget.max_tuples * 20 + 100;
  for (std::size_t attempt = 0; attempt < attempts_cap && sel.tuples.size() < budget.max_tuples;
       ++attempt) {
    std::vector<std::size_t> t(arity);
    for (auto& x : t) x = static_cast<std::size_t>(rng() % pool);  // portable across std libs
    if (mode == TupleMode::Multiset) std::sort(t.begin(), t.end());
    if (seen.insert(t).second) sel.tuples.push_back(std::move(t));
  }
  return sel;
}

}  // namespace bvk
