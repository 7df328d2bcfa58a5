#include "bvk/linfty.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bvk;
using namespace bvk::test;

namespace {

using Letters = WordSum::Letters;

// Oracle: sign of rewriting w_1^..^w_n as (left letters)^(right letters),
// found by bubble-sorting the target order back to the identity with the
// exterior rule on shifted degrees.
int letter_moving_sign(const std::vector<int>& shifted, std::vector<int> order) {
  int sign = 1;
  for (std::size_t pass = 0; pass < order.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (order[i] > order[i + 1]) {
        const int s = shifted[static_cast<std::size_t>(order[i])] * shifted[static_cast<std::size_t>(order[i + 1])];
        if (s % 2 == 0) sign = -sign;
        std::swap(order[i], order[i + 1]);
      }
    }
  }
  return sign;
}

int shifted_parity(const TablePtr& t, const Letters& ls) {
  int p = 0;
  for (const auto& m : ls) p += parity_of(*t, m) + 1;
  return p & 1;
}

void add_tensor(TensorSum& acc, const Letters& l, const Letters& r, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

WordSum q_total(const Operator& op, const WordSum& w, std::size_t max_len) {
  WordSum out(op.table());
  for (std::size_t k = 1; k <= max_len; ++k) out += extend_coderivation(op, k, w);
  return out;
}

Operator exterior_d3(const TablePtr& t) {
  return op_term(t, 1, {}, {{"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
}

std::vector<Word> sample_words(const TablePtr& t, std::size_t len, int count, unsigned max_total,
                               unsigned seed) {
  auto pool = monomial_elements(t, max_total);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1);
  std::vector<Word> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Element> ls;
    for (std::size_t j = 0; j < len; ++j) ls.push_back(pool[pick(rng)]);
    out.emplace_back(std::move(ls));
  }
  return out;
}

}  // namespace

TEST(WordSum, CanonicalSignsAndVanishing) {
  auto t = polyvector_table(2);
  // x1 has shifted degree 1, so x1 ^ x1 survives; xi1 has shifted degree 2.
  WordSum a = WordSum::from_word(Word({el(t, "x1"), el(t, "x1")}));
  EXPECT_FALSE(a.is_zero());
  EXPECT_TRUE(WordSum::from_word(Word({el(t, "xi1"), el(t, "xi1")})).is_zero());

  // swapping two shifted-odd letters: -(-1)^{1*1} = +1
  EXPECT_EQ(WordSum::from_word(Word({el(t, "x2"), el(t, "x1")})),
            WordSum::from_word(Word({el(t, "x1"), el(t, "x2")})));
  // swapping two shifted-even letters: -1
  WordSum neg = WordSum::from_word(Word({el(t, "xi1"), el(t, "xi2")}));
  neg *= -1;
  EXPECT_EQ(WordSum::from_word(Word({el(t, "xi2"), el(t, "xi1")})), neg);
  // multilinear expansion
  WordSum lin = WordSum::from_word(Word({el(t, "x1 + 2*x2"), el(t, "xi1")}));
  WordSum parts = WordSum::from_word(Word({el(t, "x1"), el(t, "xi1")}));
  WordSum second = WordSum::from_word(Word({el(t, "x2"), el(t, "xi1")}));
  second *= 2;
  parts += second;
  EXPECT_EQ(lin, parts);
  EXPECT_THROW(Word(std::vector<Element>{}), DomainError);
}

TEST(Coproduct, SmallWords) {
  auto t = polyvector_table(2);
  EXPECT_TRUE(coproduct(Word({el(t, "x1")})).empty());

  const Element a = el(t, "x1"), b = el(t, "xi1");
  auto two = coproduct(Word({a, b}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].left.letters[0], a);
  EXPECT_EQ(two[0].sign, 1);
  EXPECT_EQ(two[1].left.letters[0], b);
  // shifted degrees 1 and 2: -(-1)^{2} = -1
  EXPECT_EQ(two[1].sign, -1);
}

TEST(Coproduct, ThreeLettersMatchLetterMovingOracle) {
  auto t = polyvector_table(2);
  const std::vector<std::vector<const char*>> words{
      {"x1", "xi1", "x2*xi2"}, {"xi1", "xi2", "x1"}, {"x1", "x2", "x1*x2"}, {"xi1", "x1*xi2", "xi2"}};
  for (const auto& names : words) {
    std::vector<Element> ls;
    std::vector<int> shifted;
    for (const char* s : names) {
      ls.push_back(el(t, s));
      shifted.push_back(*ls.back().degree() + 1);
    }
    auto terms = coproduct(Word(ls));
    ASSERT_EQ(terms.size(), 6u);
    std::size_t idx = 0;
    for (int k = 1; k <= 2; ++k) {
      for (const auto& sigma : unshuffles(k, 3)) {
        EXPECT_EQ(terms[idx].sign, letter_moving_sign(shifted, sigma.perm));
        ++idx;
      }
    }
  }
}

TEST(Coproduct, ReducedCoassociativity) {
  auto t = polyvector_table(2);
  for (std::size_t len = 2; len <= 5; ++len) {
    for (const auto& w : sample_words(t, len, 6, 2, static_cast<unsigned>(len))) {
      const WordSum ws = WordSum::from_word(w);
      // (Delta (x) 1) Delta and (1 (x) Delta) Delta as maps to triple tensors
      std::map<std::tuple<Letters, Letters, Letters>, Scalar> lhs, rhs;
      auto add = [](auto& acc, const Letters& a, const Letters& b, const Letters& c, const Scalar& v) {
        auto [it, ins] = acc.try_emplace({a, b, c}, v);
        if (!ins) {
          it->second += v;
          if (it->second == 0) acc.erase(it);
        }
      };
      for (const auto& [lr, c] : coproduct(ws)) {
        WordSum left(t), right(t);
        left.add_letters(lr.first, 1);
        right.add_letters(lr.second, 1);
        for (const auto& [inner, ic] : coproduct(left)) add(lhs, inner.first, inner.second, lr.second, c * ic);
        for (const auto& [inner, ic] : coproduct(right)) add(rhs, lr.first, inner.first, inner.second, c * ic);
      }
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(ShiftedBracket, LowArities) {
  auto t = polyvector_table(2);
  const Operator delta = divergence(t, 2);
  const Element a = el(t, "x1*xi1*xi2"), b = el(t, "x2^2*xi1");
  EXPECT_EQ(shifted_bracket(delta, std::vector<Element>{a}), apply(delta, a));
  EXPECT_EQ(shifted_bracket(delta, std::vector<Element>{a, b}), bv_bracket(delta, a, b));
}

TEST(ExtendCoderivation, Examples) {
  auto t = polyvector_table(2);
  const Operator delta = divergence(t, 2);
  const Element a = el(t, "x1*xi1*xi2"), b = el(t, "x1*x2"), c = el(t, "x2*xi2");

  EXPECT_EQ(extend_coderivation(delta, 1, Word({a})), WordSum::from_word(Word({apply(delta, a)})));
  EXPECT_EQ(extend_coderivation(delta, 2, Word({a, b})),
            WordSum::from_word(Word({bv_bracket(delta, a, b)})));
  EXPECT_TRUE(extend_coderivation(delta, 3, Word({a, b})).is_zero());

  // k = 2 on three letters: brackets of (a,b), (a,c), (b,c) with unshuffle signs
  const std::vector<int> shifted{*a.degree() + 1, *b.degree() + 1, *c.degree() + 1};
  WordSum expected(t);
  const Element letters[] = {a, b, c};
  for (const auto& sigma : unshuffles(2, 3)) {
    const auto& p = sigma.perm;
    const Element lead = bv_bracket(delta, letters[p[0]], letters[p[1]]);
    expected.add_word(Word({lead, letters[p[2]]}), letter_moving_sign(shifted, p));
  }
  EXPECT_EQ(extend_coderivation(delta, 2, Word({a, b, c})), expected);
}

TEST(ExtendCoderivation, CoderivationLaw) {
  // Delta Q_k = (Q_k (x) 1 + 1 (x) Q_k) Delta with the Koszul signs of the
  // (shifted degree, length) bigrading:
  //   (Q_k (x) 1)(x (x) y) = (-1)^{k len(y)} Q_k(x) (x) y
  //   (1 (x) Q_k)(x (x) y) = (-1)^{q |x| + len(x)} x (x) Q_k(y)
  // where q = |D| + 1 - k is the shift of Q_k in the suspended grading.
  auto t = polyvector_table(2);
  const Operator ops[] = {divergence(t, 2),
                          divergence(t, 2) + op_term(t, 1, {{"xi1", 1}}, {{"x2", 1}}),
                          op_term(t, 1, {{"x1", 1}}, {{"x1", 1}, {"xi1", 1}, {"xi2", 1}})};
  for (const auto& op : ops) {
    const int d_parity = *operator_parity(op);
    for (std::size_t len = 1; len <= 5; ++len) {
      for (const auto& w : sample_words(t, len, 4, 2, static_cast<unsigned>(10 + len))) {
        const WordSum ws = WordSum::from_word(w);
        for (std::size_t k = 1; k <= len; ++k) {
          const TensorSum lhs = coproduct(extend_coderivation(op, k, ws));
          TensorSum rhs;
          for (const auto& [lr, c] : coproduct(ws)) {
            WordSum left(t), right(t);
            left.add_letters(lr.first, 1);
            right.add_letters(lr.second, 1);
            const WordSum ql_sum = extend_coderivation(op, k, left);
            const WordSum qr_sum = extend_coderivation(op, k, right);
            const long el = static_cast<long>(k * lr.second.size());
            for (const auto& [ql, qc] : ql_sum.terms()) {
              add_tensor(rhs, ql, lr.second, c * qc * sign_pow(el));
            }
            const long q = static_cast<long>(d_parity) + 1 + static_cast<long>(k);
            const long er = q * shifted_parity(t, lr.first) + static_cast<long>(lr.first.size());
            for (const auto& [qr, qc] : qr_sum.terms()) {
              add_tensor(rhs, lr.first, qr, c * qc * sign_pow(er));
            }
          }
          EXPECT_TRUE(lhs == rhs) << "k=" << k << " len=" << len << " sizes " << lhs.size() << "/"
                                  << rhs.size();
        }
      }
    }
  }
}

TEST(ExtendCoderivation, QIsOddForWordParity) {
  auto t = polyvector_table(2);
  const Operator op = divergence(t, 2) + op_term(t, 1, {{"xi1", 1}}, {{"x2", 1}});
  for (std::size_t len = 1; len <= 4; ++len) {
    for (const auto& w : sample_words(t, len, 5, 2, static_cast<unsigned>(20 + len))) {
      int in = 0;
      for (const auto& a : w.letters) in += *a.parity();
      const WordSum image = q_total(op, WordSum::from_word(w), len);
      for (const auto& [ls, c] : image.terms()) {
        int out = 0;
        for (const auto& m : ls) out += parity_of(*t, m);
        EXPECT_EQ((out - in) & 1, 1);
      }
    }
  }
}

TEST(ExtendCoderivation, QSquaredVanishesForSquareZero) {
  auto t = polyvector_table(3);
  const Operator delta = divergence(t, 3);
  const Operator mixed = delta + op_term(t, 1, {{"xi1", 1}}, {{"x2", 1}}) - op_term(t, 1, {{"xi2", 1}}, {{"x1", 1}});
  // a third-order piece: constant-coefficient operators anticommute
  const Operator third = delta + op_term(t, 1, {}, {{"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
  ASSERT_TRUE(is_square_zero(mixed).square_zero);
  ASSERT_TRUE(is_square_zero(third).square_zero);
  for (const Operator* op : {&delta, &mixed, &third}) {
    for (std::size_t len = 1; len <= 4; ++len) {
      for (const auto& w : sample_words(t, len, 8, 2, static_cast<unsigned>(30 + len))) {
        const WordSum ws = WordSum::from_word(w);
        EXPECT_TRUE(q_total(*op, q_total(*op, ws, len), len).is_zero()) << to_string(*op);
      }
    }
  }
  // and it does not vanish once the square is nonzero
  const Operator bad = delta + Operator::multiplication(el(t, "xi1"));
  const WordSum w = WordSum::from_word(Word({el(t, "x1")}));
  EXPECT_FALSE(q_total(bad, q_total(bad, w, 1), 1).is_zero());
}

TEST(ExtendCoderivation, LengthOneProjectionIsTheRelation) {
  auto t = polyvector_table(2);
  const Operator bad = divergence(t, 2) + Operator::multiplication(el(t, "xi1")) +
                       op_term(t, 1, {{"x1", 1}}, {{"x1", 1}, {"x2", 1}, {"xi1", 1}});
  for (std::size_t len = 1; len <= 4; ++len) {
    for (const auto& w : sample_words(t, len, 6, 2, static_cast<unsigned>(60 + len))) {
      const WordSum qq = q_total(bad, q_total(bad, WordSum::from_word(w), len), len);
      WordSum projected(t);
      for (const auto& [ls, c] : qq.terms()) {
        if (ls.size() == 1) projected.add_letters(ls, c);
      }
      WordSum expected(t);
      const Element r = linfty_relation(bad, w.letters);
      if (!r.is_zero()) expected.add_word(Word({r}));
      EXPECT_EQ(projected, expected);
    }
  }
}

TEST(Relation, LowArityMeaning) {
  auto t = polyvector_table(2);
  const Operator delta = divergence(t, 2);
  const Operator bad = delta + Operator::multiplication(el(t, "xi1"));
  const Element a = el(t, "x1");
  EXPECT_EQ(linfty_relation(bad, std::vector<Element>{a}), apply(bad, apply(bad, a)));
  EXPECT_FALSE(linfty_relation(bad, std::vector<Element>{a}).is_zero());
  // n = 2 is the derivation property D[a,b] = [Da,b] + (-1)^{|a|+1}[a,Db]
  for (const auto& x : monomial_elements(t, 2)) {
    for (const auto& y : monomial_elements(t, 2)) {
      EXPECT_TRUE(linfty_relation(delta, std::vector<Element>{x, y}).is_zero());
    }
  }
}

TEST(Relation, TwoRoutesAgreeUpToSign) {
  // For a non-square-zero odd operator both forms are nonzero; they must
  // vanish together and differ only by a sign.
  auto t = polyvector_table(2);
  const Operator bad = divergence(t, 2) + Operator::multiplication(el(t, "xi1")) +
                       op_term(t, 1, {{"x1", 1}}, {{"x1", 1}, {"x2", 1}, {"xi1", 1}});
  ASSERT_FALSE(is_square_zero(bad).square_zero);
  std::size_t nonzero = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& w : sample_words(t, n, 50, 2, static_cast<unsigned>(40 + n))) {
      const Element r1 = linfty_relation(bad, w.letters);
      const Element r2 = symmetric_relation(bad, w.letters);
      EXPECT_TRUE(r1 == r2 || r1 == -r2);
      if (!r1.is_zero()) ++nonzero;
    }
  }
  EXPECT_GT(nonzero, 20u);
}

TEST(VerifyLinfty, PolyvectorDivergence) {
  auto t = polyvector_table(2);
  Budget budget{2, 400, 5};
  for (const auto& r : verify_linfty(divergence(t, 2), 4, budget)) {
    EXPECT_TRUE(r.passed) << "n=" << r.n;
    EXPECT_GT(r.tuples_tested, 0u);
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& w : sample_words(t, n, 20, 2, static_cast<unsigned>(50 + n))) {
      EXPECT_TRUE(symmetric_relation(divergence(t, 2), w.letters).is_zero());
    }
  }
}

TEST(VerifyLinfty, ExteriorThirdOrderExhaustive) {
  auto t = make_table({{"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
  const Operator d = exterior_d3(t);
  ASSERT_TRUE(is_square_zero(d).square_zero);
  Budget budget{3, 5000, 1};
  const auto reports = verify_linfty(d, 4, budget);
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << "n=" << r.n;
    EXPECT_TRUE(r.exhaustive) << "n=" << r.n;
  }
  EXPECT_EQ(reports[3].tuples_tested, 8u * 8u * 8u * 8u);
}

TEST(VerifyLinfty, ConverseWitness) {
  auto t = polyvector_table(2);
  const Operator bad = divergence(t, 2) + Operator::multiplication(el(t, "xi1"));
  Budget budget{2, 400, 5};
  const auto reports = verify_linfty(bad, 2, budget);
  ASSERT_FALSE(reports[0].passed);
  ASSERT_TRUE(reports[0].witness.has_value());
  const Element w = reports[0].witness->front();
  EXPECT_FALSE(apply(bad, apply(bad, w)).is_zero());
  EXPECT_EQ(*reports[0].residual, apply(bad, apply(bad, w)));
}

TEST(VerifyLinfty, RequiresOddOperator) {
  auto t = polyvector_table(1);
  EXPECT_THROW(verify_linfty(Operator::identity(t), 2, Budget{}), DomainError);
}
