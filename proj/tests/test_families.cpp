#include <gtest/gtest.h>

#include "gen.hpp"
#include "seqchain/families.hpp"

using namespace seqchain;

namespace {

Rational rational_at(const Sequence& s, std::uint64_t n) {
  const auto e = s.exact_term(n);
  EXPECT_TRUE(e && e->is_rational());
  return e->is_zero() ? Rational(0) : e->coeff.re;
}

// Independent oracle for the selection: scan A, first element ≥ 2, then the
// first later element ≥ 2^(n+1).
std::vector<std::uint64_t> select_positions(const SupportSet& a, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t threshold = 2;
  for (std::uint64_t k = 1; out.size() < count; ++k) {
    const auto l = a.nth(k);
    if (l >= threshold && (out.empty() || l > out.back())) {
      out.push_back(l);
      threshold *= 2;
    }
  }
  return out;
}

bool lower_bound_holds(const Sequence& s, const GrowthTag& t, std::uint64_t m) {
  const std::uint64_t idx = t.index(m);
  const auto e = s.exact_term(idx);
  if (!e) return false;
  switch (t.kind) {
    case GrowthKind::SubseqLowerBound: {
      PowerProduct lhs = e->magnitude();
      lhs.times(from_u64(idx), Rational(t.weight));
      return compare(lhs, t.bound(m)) >= 0;
    }
    case GrowthKind::RootLowerBound:
      return compare(e->magnitude(), t.bound(m).raised(from_u64(idx))) >= 0;
    case GrowthKind::PartialSumLowerBound: {
      Rational sum(0);
      for (std::uint64_t n = 0; n <= idx; ++n) {
        const Interval v = s.magnitude_pow(n, t.exponent, 64);
        if (!v.is_point()) return false;
        sum += v.lo;
      }
      return compare(PowerProduct(sum), t.bound(m)) >= 0;
    }
  }
  return false;
}

}  // namespace

TEST(Families, Prop28Values) {
  const Sequence y = prop28();
  EXPECT_EQ(rational_at(y, 4), make_rational(1, 2));
  EXPECT_EQ(rational_at(y, 16), make_rational(1, 4));
  EXPECT_EQ(rational_at(y, 1), Rational(0));
  EXPECT_EQ(rational_at(y, 6), Rational(0));
  EXPECT_EQ(*y.exact_term(2), ExactTerm::power(make_rational(1, 2), make_rational(1, 2)));
}

TEST(Families, Prop28SquareMassIsOne) {
  const Sequence y = prop28();
  Rational head(0);
  const std::uint64_t last = std::uint64_t{1} << 45;
  for (std::uint64_t s = 2; s <= last; s *= 2) head += y.magnitude_pow(s, Rational(2), 64).lo;
  EXPECT_EQ(head, 1 - two_pow(-45));
  const Rational tail = *y.tail_pow(static_cast<std::int64_t>(last), Rational(2), 64);
  EXPECT_GE(tail, two_pow(-45));
  EXPECT_LE(abs(Rational(head + tail - 1)), two_pow(-40));
}

TEST(Families, Rem29SelectionOnBlocks) {
  for (std::uint64_t j : {1, 2, 3}) {
    const SupportSet a = SupportSet::dyadic_row(j);
    const auto expected = select_positions(a, 12);
    const Sequence r = rem29(a);
    const auto& node = dynamic_cast<const detail::SqrtSelectionNode&>(r.node());
    ASSERT_GE(node.positions().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(node.positions()[i], expected[i]);
      EXPECT_GE(expected[i], std::uint64_t{2} << i);
    }
  }
  // A_2 = {1, 5, 9, ...}: frozen from the scan above.
  const Sequence r2 = rem29(SupportSet::dyadic_row(2)), rp = rem29(SupportSet::powers_of_two()), y = prop28();
  const auto& a2 = dynamic_cast<const detail::SqrtSelectionNode&>(r2.node());
  EXPECT_EQ(std::vector<std::uint64_t>(a2.positions().begin(), a2.positions().begin() + 6),
            (std::vector<std::uint64_t>{5, 9, 13, 17, 33, 65}));
  const auto& p2 = dynamic_cast<const detail::SqrtSelectionNode&>(rp.node());
  const auto& canon = dynamic_cast<const detail::SqrtSelectionNode&>(y.node());
  EXPECT_EQ(p2.positions(), canon.positions());
}

TEST(Families, ClosedForms) {
  EXPECT_EQ(rational_at(nat(), 7), Rational(7));
  EXPECT_EQ(rational_at(nat_power(), 3), Rational(81));
  const Sequence nn = nn_on_support(SupportSet::arith(0, 2));
  EXPECT_EQ(rational_at(nn, 0), Rational(1));
  EXPECT_EQ(rational_at(nn, 3), Rational(0));
  EXPECT_EQ(rational_at(nn, 4), Rational(256));
  EXPECT_EQ(rational_at(const_one(), 12345), Rational(1));
  EXPECT_EQ(rational_at(gap_cap_c0(Rational(2)), 0), Rational(1));
  EXPECT_EQ(rational_at(gap_cap_c0(Rational(2)), 6), make_rational(1, 3));
  EXPECT_EQ(rational_at(gap_lp_cap(Rational(1)), 2), make_rational(1, 4));
  EXPECT_EQ(rational_at(gap_cap_lp(Rational(1), Rational(2)), 7), make_rational(1, 4));
}

// Σ n r^n by brute force over 400 terms: 2 at r = 1/2 from n = 0, 1 from n = 3.
TEST(Families, NatDiscTail) {
  EXPECT_EQ(nat().disc_tail(-1, make_rational(1, 2), 64), Rational(2));
  EXPECT_EQ(nat().disc_tail(2, make_rational(1, 2), 64), Rational(1));
  Rational brute(0);
  for (long n = 3; n < 400; ++n) brute += Rational(n) * two_pow(-n);
  EXPECT_LE(brute, Rational(1));
  EXPECT_GT(brute, 1 - two_pow(-300));
}

// Per-block sums of gap-lp-cap at p = a are 1: Σ_{n ≤ 5} |a_n| = 2 for a = 1.
TEST(Families, GapBlockSums) {
  const Sequence g1 = gap_lp_cap(Rational(1));
  Rational s(0);
  for (std::uint64_t n = 0; n <= 5; ++n) s += rational_at(g1, n);
  EXPECT_EQ(s, Rational(2));
  EXPECT_FALSE(g1.tail_pow(0, Rational(1), 64));
  EXPECT_TRUE(g1.tail_pow(0, make_rational(11, 10), 64));
  EXPECT_FALSE(gap_cap_lp(Rational(1), Rational(2)).tail_pow(0, make_rational(3, 2), 64));
  EXPECT_TRUE(gap_cap_lp(Rational(1), Rational(2)).tail_pow(0, make_rational(8, 5), 64));
}

TEST(Families, GrowthTagsHoldExactly) {
  const std::vector<Sequence> seqs = {prop28(),
                                      rem29(SupportSet::dyadic_row(3)),
                                      nat(),
                                      nat_power(),
                                      nn_on_support(SupportSet::dyadic_row(2)),
                                      const_one(),
                                      gap_lp_cap(Rational(1)),
                                      gap_lp_cap(Rational(2)),
                                      gap_cap_lp(Rational(1), Rational(2)),
                                      gap_cap_lp(Rational(0), Rational(1)),
                                      gap_cap_c0(Rational(2)),
                                      spread(gap_lp_cap(Rational(1)), SupportSet::dyadic_row(2))};
  for (const auto& s : seqs) {
    const auto tags = s.growth_tags();
    ASSERT_FALSE(tags.empty()) << s.to_spec().dump();
    for (const auto& t : tags)
      for (std::uint64_t m = std::max<std::uint64_t>(t.first_m, 1); m <= 7; ++m)
        EXPECT_TRUE(lower_bound_holds(s, t, m)) << s.to_spec().dump() << " m=" << m;
  }
}

TEST(Families, InvalidParameters) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  EXPECT_EQ(code_of([] { gap_lp_cap(Rational(0)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { gap_cap_lp(Rational(2), Rational(1)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { gap_cap_c0(make_rational(1, 2)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { rem29(SupportSet::explicit_finite({4})); }), ErrorCode::FiniteSupportSet);
  EXPECT_EQ(code_of([] { nn_on_support(SupportSet::explicit_finite({4})); }), ErrorCode::FiniteSupportSet);
}
