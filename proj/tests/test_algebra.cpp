#include "bvk/algebra.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace bvk;
using namespace bvk::test;

namespace {

// Oracle: write a*b as a word of generator letters and bubble-sort it into
// table order, flipping the sign whenever two odd letters cross.
Element word_product(const TablePtr& t, const Monomial& a, const Monomial& b) {
  std::vector<std::size_t> word;
  for (const Monomial* m : {&a, &b}) {
    for (std::size_t i = 0; i < m->exps.size(); ++i) {
      for (std::uint32_t e = 0; e < m->exps[i]; ++e) word.push_back(i);
    }
  }
  int sign = 1;
  for (std::size_t pass = 0; pass < word.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        if (t->is_odd(word[i]) && t->is_odd(word[i + 1])) sign = -sign;
        std::swap(word[i], word[i + 1]);
      }
    }
  }
  Monomial out(t->size());
  for (auto i : word) ++out.exps[i];
  return Element::monomial(t, out, sign);  // vanishes on a repeated odd letter
}

}  // namespace

TEST(GeneratorTable, RejectsDuplicatesAndBadNames) {
  EXPECT_THROW(make_table({{"x", 0}, {"x", 1}}), DomainError);
  EXPECT_THROW(make_table({{"1x", 0}}), DomainError);
  auto t = make_table({{"x", 0}, {"xi", 1}});
  EXPECT_EQ(t->find("xi"), std::optional<std::size_t>(1));
  EXPECT_FALSE(t->find("y").has_value());
  EXPECT_TRUE(t->is_odd(1));
  EXPECT_FALSE(t->is_odd(0));
}

TEST(Multiply, SpecExamples) {
  auto t = make_table({{"x", 0}, {"xi1", 1}, {"xi2", 1}});
  EXPECT_EQ(el(t, "x") * el(t, "x"), el(t, "x^2"));
  EXPECT_TRUE((el(t, "xi1") * el(t, "xi1")).is_zero());
  EXPECT_EQ(el(t, "xi2") * el(t, "xi1"), -el(t, "xi1*xi2"));
  EXPECT_EQ(to_string(el(t, "xi2*xi1")), "-xi1*xi2");
}

TEST(Multiply, MismatchedTablesThrow) {
  auto t1 = make_table({{"x", 0}});
  auto t2 = make_table({{"y", 0}});
  EXPECT_THROW(multiply(el(t1, "x"), el(t2, "y")), DomainError);
  // structurally equal tables are compatible
  auto t3 = make_table({{"x", 0}});
  EXPECT_EQ(el(t1, "x") * el(t3, "x"), el(t1, "x^2"));
}

TEST(Multiply, MatchesLetterSortingOracle) {
  auto t = make_table({{"x", 0}, {"a", 1}, {"y", 2}, {"b", -1}, {"c", 3}});
  auto basis = monomials_up_to(*t, 3);
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      EXPECT_EQ(multiply(Element::monomial(t, a), Element::monomial(t, b)), word_product(t, a, b))
          << to_string(*t, a) << " * " << to_string(*t, b);
    }
  }
}

TEST(Multiply, GradedCommutativeAssociativeUnital) {
  auto t = make_table({{"x", 0}, {"a", 1}, {"y", 2}, {"b", -1}});
  const auto basis = monomial_elements(t, 2);
  const Element one = Element::unit(t);
  for (const auto& a : basis) {
    EXPECT_EQ(one * a, a);
    EXPECT_EQ(a * one, a);
    for (const auto& b : basis) {
      const Element ab = a * b;
      const Element ba = b * a;
      const int s = sign_pow(static_cast<long>(*a.degree()) * *b.degree());
      EXPECT_EQ(ab, s > 0 ? ba : -ba);
      if (!ab.is_zero()) {
        EXPECT_EQ(*ab.degree(), *a.degree() + *b.degree());
      }
      for (const auto& c : basis) {
        EXPECT_EQ((a * b) * c, a * (b * c));
      }
    }
  }
}

TEST(GradeDecompose, Examples) {
  auto t = make_table({{"x1", 0}, {"xi1", 1}});
  EXPECT_TRUE(grade_decompose(Element(t)).empty());

  auto parts = grade_decompose(el(t, "1 + x1*xi1"));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.at(0), el(t, "1"));
  EXPECT_EQ(parts.at(1), el(t, "x1*xi1"));

  const Element s = el(t, "x1 + xi1");
  auto sq = grade_decompose(s * s);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq.at(0), el(t, "x1^2"));
  EXPECT_EQ(sq.at(1), el(t, "2*x1*xi1"));
}

TEST(GradeDecompose, ComponentsSumBack) {
  auto t = make_table({{"x", 0}, {"a", 1}, {"y", 2}});
  const Element e = el(t, "3 - x*a + 1/2*y + a*y^2 - 7*x^3");
  Element sum(t);
  for (const auto& [d, part] : grade_decompose(e)) {
    EXPECT_EQ(part.degree(), std::optional<Degree>(d));
    sum += part;
  }
  EXPECT_EQ(sum, e);
}

TEST(PartialDerivative, LeftDerivativeSigns) {
  auto t = make_table({{"x", 0}, {"xi1", 1}, {"xi2", 1}});
  EXPECT_EQ(partial_derivative(el(t, "x^3"), 0), el(t, "3*x^2"));
  EXPECT_EQ(partial_derivative(el(t, "xi1*xi2"), 1), el(t, "xi2"));
  EXPECT_EQ(partial_derivative(el(t, "xi1*xi2"), 2), el(t, "-xi1"));
  EXPECT_TRUE(partial_derivative(el(t, "x"), 1).is_zero());
  EXPECT_THROW(partial_derivative(el(t, "x"), 9), DomainError);
}

TEST(PartialDerivative, GradedLeibniz) {
  // d_i(ab) = d_i(a) b + (-1)^{|g_i||a|} a d_i(b)
  auto t = make_table({{"x", 0}, {"a", 1}, {"y", 2}, {"b", 1}});
  const auto basis = monomial_elements(t, 2);
  for (std::size_t i = 0; i < t->size(); ++i) {
    for (const auto& a : basis) {
      for (const auto& b : basis) {
        Element rhs = partial_derivative(a, i) * b;
        const Element second = a * partial_derivative(b, i);
        if (sign_pow(static_cast<long>(t->degree(i)) * *a.degree()) > 0) {
          rhs += second;
        } else {
          rhs -= second;
        }
        EXPECT_EQ(partial_derivative(a * b, i), rhs);
      }
    }
  }
}

TEST(Enumeration, MonomialsUpTo) {
  auto t = make_table({{"x", 0}, {"xi", 1}});
  auto ms = monomials_up_to(*t, 2);
  // 1, x, xi, x^2, x*xi
  ASSERT_EQ(ms.size(), 5u);
  EXPECT_TRUE(ms[0].is_unit());
  for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_LE(ms[i - 1].total(), ms[i].total());
}

TEST(Enumeration, MonomialsOfWeight) {
  auto t = make_table({{"x", 0}, {"xi", 1}});
  auto ms = monomials_of_weight(*t, {1, 1}, 2);
  // x^2, x*xi
  EXPECT_EQ(ms.size(), 2u);
  EXPECT_THROW(monomials_of_weight(*t, {0, 1}, 1), DomainError);
  EXPECT_THROW(monomials_of_weight(*t, {1}, 1), DomainError);
}

TEST(Parse, RoundTripAndErrors) {
  auto t = make_table({{"x", 0}, {"xi1", 1}, {"xi2", 1}});
  for (const char* s : {"0", "1", "-3/2*x^2*xi1 + xi2", "x*xi1*xi2 - 7"}) {
    const Element e = el(t, s);
    EXPECT_EQ(el(t, to_string(e)), e) << s;
  }
  EXPECT_EQ(el(t, "xi2*xi1"), -el(t, "xi1*xi2"));
  EXPECT_EQ(el(t, "2*x + x"), el(t, "3*x"));
  EXPECT_THROW(el(t, "y"), DomainError);
  EXPECT_THROW(el(t, "x +"), DomainError);
  EXPECT_THROW(el(t, "x^"), DomainError);
  EXPECT_THROW(el(t, "1/0*x"), DomainError);
}
