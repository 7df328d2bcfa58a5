#include "bvk/graded.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace bvk;

namespace {

// Oracle: all permutations of n filtered by the unshuffle predicate.
std::vector<std::vector<int>> brute_unshuffles(int k, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) {
      if (i == k - 1) continue;
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(i + 1)]) ok = false;
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Oracle: sort the permuted word back with adjacent swaps, accumulating the
// exterior sign -(-1)^{pq} per swap.
int bubble_sign(const std::vector<Degree>& degrees, std::vector<int> perm, bool with_perm_sign) {
  long exponent = 0;
  for (std::size_t pass = 0; pass < perm.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
      if (perm[i] > perm[i + 1]) {
        exponent += parity(degrees[static_cast<std::size_t>(perm[i])]) *
                    parity(degrees[static_cast<std::size_t>(perm[i + 1])]);
        if (with_perm_sign) ++exponent;
        std::swap(perm[i], perm[i + 1]);
      }
    }
  }
  return sign_pow(exponent);
}

}  // namespace

TEST(Scalar, ParsesExactRationals) {
  EXPECT_EQ(parse_scalar("-3/2"), Scalar(-3, 2));
  EXPECT_EQ(parse_scalar("4/6"), Scalar(2, 3));
  EXPECT_EQ(to_string(parse_scalar("4/6")), "2/3");
  EXPECT_EQ(parse_scalar("+7"), Scalar(7));
  EXPECT_THROW(parse_scalar("1/0"), DomainError);
  EXPECT_THROW(parse_scalar("1.5"), DomainError);
  EXPECT_THROW(parse_scalar("/2"), DomainError);
  EXPECT_THROW(parse_scalar(""), DomainError);
}

TEST(Unshuffles, TrivialCases) {
  auto one = unshuffles(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].perm, (std::vector<int>{0}));

  auto two = unshuffles(1, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(two[1].perm, (std::vector<int>{1, 0}));
}

TEST(Unshuffles, MatchBruteForceFilter) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      auto got = unshuffles(k, n);
      auto expected = brute_unshuffles(k, n);
      ASSERT_EQ(got.size(), expected.size()) << k << "," << n;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].perm, expected[i]) << "lexicographic order";
        EXPECT_EQ(got[i].split, k);
      }
    }
  }
  EXPECT_EQ(unshuffles(2, 4).size(), 6u);
}

TEST(Unshuffles, TotalCountIsTwoToTheNMinusTwo) {
  for (int n = 2; n <= 8; ++n) {
    std::size_t total = 0;
    for (int k = 1; k <= n - 1; ++k) total += unshuffles(k, n).size();
    EXPECT_EQ(total, (std::size_t{1} << n) - 2);
  }
}

TEST(Unshuffles, DomainErrors) {
  EXPECT_THROW(unshuffles(0, 3), DomainError);
  EXPECT_THROW(unshuffles(4, 3), DomainError);
}

TEST(GradedSign, Examples) {
  const std::vector<int> id{0, 1, 2};
  const std::vector<Degree> degs{1, 2, 3};
  EXPECT_EQ(graded_sign(degs, std::span<const int>(id)), 1);

  const std::vector<int> swap{1, 0};
  EXPECT_EQ(graded_sign(std::vector<Degree>{0, 2}, std::span<const int>(swap)), -1);
  EXPECT_EQ(graded_sign(std::vector<Degree>{1, 3}, std::span<const int>(swap)), 1);
  EXPECT_EQ(koszul_sign(std::vector<Degree>{1, 3}, std::span<const int>(swap)), -1);
  EXPECT_EQ(koszul_sign(std::vector<Degree>{0, 3}, std::span<const int>(swap)), 1);

  EXPECT_THROW(graded_sign(std::vector<Degree>{1}, std::span<const int>(swap)), DomainError);
}

TEST(GradedSign, InversionFormulaMatchesBubbleSort) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> deg(-3, 3);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Degree> degrees(static_cast<std::size_t>(n));
      for (auto& d : degrees) d = deg(rng);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      EXPECT_EQ(graded_sign(degrees, std::span<const int>(perm)), bubble_sign(degrees, perm, true));
      EXPECT_EQ(koszul_sign(degrees, std::span<const int>(perm)), bubble_sign(degrees, perm, false));
    }
  }
}

TEST(GradedSign, MultiplicativeUnderComposition) {
  // Reordering by p then by q (applied to the already permuted degrees) is
  // the same as reordering by the composite.
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> deg(-2, 2);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Degree> degrees(static_cast<std::size_t>(n));
      for (auto& d : degrees) d = deg(rng);
      std::vector<int> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::iota(q.begin(), q.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      std::shuffle(q.begin(), q.end(), rng);
      std::vector<Degree> permuted(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < p.size(); ++i) permuted[i] = degrees[static_cast<std::size_t>(p[i])];
      std::vector<int> composite(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < q.size(); ++i) composite[i] = p[static_cast<std::size_t>(q[i])];
      EXPECT_EQ(graded_sign(degrees, std::span<const int>(p)) *
                    graded_sign(permuted, std::span<const int>(q)),
                graded_sign(degrees, std::span<const int>(composite)));
    }
  }
}
