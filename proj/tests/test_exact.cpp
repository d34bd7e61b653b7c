#include <gtest/gtest.h>

#include "gen.hpp"
#include "seqchain/exact.hpp"

using namespace seqchain;

TEST(Exact, NormalizePower) {
  auto [f, r] = normalize_power(Rational(9), make_rational(3, 2));
  EXPECT_EQ(f, Rational(27));
  EXPECT_TRUE(r.is_one());
  auto [g, s] = normalize_power(make_rational(1, 4), make_rational(1, 2));
  EXPECT_EQ(g, make_rational(1, 2));
  EXPECT_TRUE(s.is_one());
  // (1/2)^(1/2) = 2^(1/2)/2
  auto [h, t] = normalize_power(make_rational(1, 2), make_rational(1, 2));
  EXPECT_EQ(h, make_rational(1, 2));
  EXPECT_EQ(t.base, Integer(2));
}

TEST(Exact, RadicalEnclosureNests) {
  const Radical r{Integer(2), 2};
  Interval prev = r.enclosure(4);
  for (unsigned b = 5; b < 80; ++b) {
    const Interval cur = r.enclosure(b);
    EXPECT_TRUE(prev.contains(cur));
    EXPECT_LE(cur.lo * cur.lo, 2);
    EXPECT_GE(cur.hi * cur.hi, 2);
    prev = cur;
  }
}

TEST(Exact, AddAndDivide) {
  const ExactTerm a = ExactTerm::power(Rational(2), make_rational(1, 2));
  const ExactTerm b = ComplexRational(Rational(3)) * a;
  auto s = try_add(a, b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->coeff, ComplexRational(Rational(4)));
  EXPECT_EQ(try_divide(b, a), ComplexRational(Rational(3)));
  EXPECT_FALSE(try_add(a, ExactTerm::rational(Rational(1))));
  EXPECT_FALSE(try_divide(a, ExactTerm::zero()));
  EXPECT_EQ(try_divide(ExactTerm::zero(), a), ComplexRational{});
}

TEST(Exact, RadicalsCompareByValue) {
  const ExactTerm s8 = ExactTerm::power(Rational(8), make_rational(1, 2));
  const ExactTerm s2 = ExactTerm::power(Rational(2), make_rational(1, 2));
  EXPECT_EQ(s8, ComplexRational(Rational(2)) * s2);
  EXPECT_EQ(try_divide(s8, s2), ComplexRational(Rational(2)));
  auto sum = try_add(s8, s2);
  ASSERT_TRUE(sum);
  EXPECT_EQ(*sum, ComplexRational(Rational(3)) * s2);
  EXPECT_FALSE(try_divide(s2, ExactTerm::power(Rational(3), make_rational(1, 2))));
}

TEST(Exact, MagnitudeOfGaussian) {
  const ExactTerm z = ExactTerm::rational(ComplexRational(Rational(3), Rational(4)));
  EXPECT_EQ(z.magnitude().exact(), Rational(5));
}

TEST(ExactProperty, EnclosureContainsValue) {
  gen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Rational x = g.positive_rational(50, 13);
    const Rational e = make_rational(g.between(-5, 5), g.between(1, 6));
    const ExactTerm t = ExactTerm::power(x, e);
    const ComplexInterval box = t.enclosure(60);
    const long d = e.get_den().get_si();
    const Rational target = pow(x, e.get_num().get_si());
    ASSERT_LE(pow(box.re.lo, d), target);
    ASSERT_GE(pow(box.re.hi, d), target);
    ASSERT_LE(box.re.width(), two_pow(-60));
  }
}
