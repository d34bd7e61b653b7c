#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace seqchain;
using namespace seqchain::oracle;

namespace {

constexpr std::uint64_t kBudget = 1024;
constexpr unsigned kPrec = 64;

}  // namespace

TEST(Classify, ZeroIsInEverySpace) {
  const Sequence z = zero_sequence();
  for (const auto& x : all_spaces()) {
    const Verdict v = classify(z, x, kBudget, kPrec);
    EXPECT_EQ(v.kind, VerdictKind::In) << to_string(x);
    EXPECT_TRUE(check_certificate(z, v, 0, kPrec)) << to_string(x);
  }
}

TEST(Classify, NatLeavesLinfButStaysInHd) {
  const Sequence a = nat();
  const Verdict out = classify(a, SpaceId::linf(), kBudget, kPrec);
  ASSERT_EQ(out.kind, VerdictKind::Out);
  EXPECT_EQ(out.out->shape, OutShape::Unbounded);
  EXPECT_TRUE(check_certificate(a, out, 10, kPrec));
  const Verdict in = classify(a, SpaceId::hd(), kBudget, kPrec);
  ASSERT_EQ(in.kind, VerdictKind::In);
  EXPECT_EQ(in.in->shape, InShape::DiscTails);
  EXPECT_TRUE(check_certificate(a, in, 0, kPrec));
}

TEST(Classify, NatPowerLeavesHd) {
  const Sequence a = nat_power();
  const Verdict v = classify(a, SpaceId::hd(), kBudget, kPrec);
  ASSERT_EQ(v.kind, VerdictKind::Out);
  EXPECT_EQ(v.out->shape, OutShape::RootLimsupExceeds);
  EXPECT_GT(v.out->rho, 1);
  EXPECT_TRUE(check_certificate(a, v, 0, kPrec));
}

TEST(Classify, Prop28LeavesAinfWithWeightOne) {
  const Sequence a = prop28();
  const Verdict v = classify(a, SpaceId::ainf(), kBudget, kPrec);
  ASSERT_EQ(v.kind, VerdictKind::Out);
  EXPECT_EQ(v.out->shape, OutShape::UnboundedWeighted);
  EXPECT_EQ(v.out->k, 1u);
  // samples sit on powers of two, with bound 2^{m/2}
  for (const auto& s : v.out->samples) {
    EXPECT_EQ(s.index, std::uint64_t{1} << s.m);
    const Rational sq = s.bound * s.bound;
    EXPECT_GE(sq, pow(Rational(2), static_cast<long>(s.m)));
  }
  EXPECT_TRUE(check_certificate(a, v, 0, kPrec));
}

TEST(Classify, UserDataIsInEverywhere) {
  const Sequence a = finite_sequence({{0, ComplexRational(Rational(5))}, {7, ComplexRational(Rational(1), Rational(-3))}});
  for (const auto& x : all_spaces()) {
    const Verdict v = classify(a, x, kBudget, kPrec);
    EXPECT_EQ(v.kind, VerdictKind::In) << to_string(x);
  }
}

TEST(CheckCertificate, ForgedCertificatesFail) {
  const Sequence a = nat();
  const Verdict v = classify(a, SpaceId::linf(), kBudget, kPrec);
  ASSERT_EQ(v.kind, VerdictKind::Out);

  Verdict shape = v;
  shape.out->shape = OutShape::NotVanishing;
  shape.out->delta = Rational(1);
  EXPECT_FALSE(check_certificate(a, shape, 0, kPrec));

  Verdict moved = v;
  moved.out->samples.front().index = 0;  // a_0 = 0
  EXPECT_FALSE(check_certificate(a, moved, 0, kPrec));

  Verdict inflated = v;
  inflated.out->samples.back().bound += 1;
  EXPECT_FALSE(check_certificate(a, inflated, 0, kPrec));

  // the genuine nat certificate is meaningless for the zero sequence
  EXPECT_FALSE(check_certificate(zero_sequence(), v, 0, kPrec));

  const Verdict in = classify(prop28(), SpaceId::lp(Rational(1)), kBudget, kPrec);
  ASSERT_EQ(in.kind, VerdictKind::In);
  Verdict tight = in;
  tight.in->steps.front().tail /= 4;
  EXPECT_FALSE(check_certificate(prop28(), tight, 0, kPrec));
  EXPECT_FALSE(check_certificate(nat(), in, 0, kPrec));
}

TEST(CheckCertificate, UndecidedIsNotACertificate) {
  EXPECT_FALSE(check_certificate(nat(), Verdict::undecided(kBudget), 0, kPrec));
}

TEST(FamilyCheck, Prop28AgainstF11) {
  const Sequence a = prop28();
  const FamilyResult r = closed_family_check(a, FamilyRef::fmk(Rational(1), 1), kBudget, kPrec);
  EXPECT_EQ(r, FamilyResult::violated_at(2));
  const Interval v = a.magnitude(2, kPrec) * Interval::point(Rational(2));
  EXPECT_GT(v.lo, 1);
  EXPECT_LT(v.lo * v.lo, Rational(2) + Rational(1, 1000000));
  EXPECT_GT(v.hi * v.hi, Rational(2) - Rational(1, 1000000));
}

TEST(FamilyCheck, ZeroIsConsistentWithEveryFamily) {
  const Sequence z = zero_sequence();
  for (const char* f : {"FMk:1:1", "psum:2:1", "Fnk:0:3", "FM:0", "Fkj:1:1"})
    EXPECT_EQ(closed_family_check(z, parse_family_ref(f), kBudget, kPrec), FamilyResult::consistent_up_to(kBudget)) << f;
  EXPECT_EQ(closed_family_check(z, FamilyRef::fm(Rational(-1)), kBudget, kPrec), FamilyResult::violated_at(0));
}

TEST(FamilyCheck, NatRootStaysBelowThreeHalves) {
  const std::uint64_t budget = 4096;
  // n ≤ (3/2)^n for every n ≤ budget, checked exactly
  Rational t(1);
  for (std::uint64_t n = 0; n <= budget; ++n, t *= Rational(3, 2)) ASSERT_LE(from_u64(n), t) << n;
  EXPECT_EQ(closed_family_check(nat(), FamilyRef::fkj(1, 1), budget, kPrec), FamilyResult::consistent_up_to(budget));
  EXPECT_EQ(closed_family_check(nat(), FamilyRef::fkj(1, 2), budget, kPrec), FamilyResult::consistent_up_to(budget));
  // j = 3 needs n ≤ (4/3)^n; 2 > 16/9
  EXPECT_EQ(closed_family_check(nat(), FamilyRef::fkj(1, 3), budget, kPrec), FamilyResult::violated_at(2));
}

TEST(FamilyCheck, IrrationalTermsDecideBothWays) {
  // 2^{-1/2}·2 = √2 lies between 7/5 and 3/2
  const Sequence a = prop28();
  EXPECT_EQ(closed_family_check(a, FamilyRef::fmk(Rational(7, 5), 1), 2, kPrec), FamilyResult::violated_at(2));
  EXPECT_EQ(closed_family_check(a, FamilyRef::fmk(Rational(3, 2), 1), 2, kPrec), FamilyResult::consistent_up_to(2));
}

TEST(FamilyRefs, ParseAndPrint) {
  for (const char* f : {"FMk:1/1:1", "psum:3/2:4/1", "Fnk:5:2", "FM:7/1", "Fkj:1:2"})
    EXPECT_EQ(to_string(parse_family_ref(f)), f);
  for (const char* bad : {"FMk:1", "psum:0:1", "Fnk:1:0", "Fkj:1:0", "Foo:1", "FM:1:2", "FMk:1:-1"})
    EXPECT_THROW(parse_family_ref(bad), Error) << bad;
}

TEST(Decompose, Prop28PowersOfTwo) {
  Grid g{{Rational(1)}, {}};
  for (long m = 1; m <= 10; ++m) g.inner.push_back(Rational(m));
  const auto rows = decompose_report(prop28(), SpaceId::ainf(), g, kBudget, kPrec);
  ASSERT_EQ(rows.size(), 10u);
  const std::uint64_t expected[] = {2, 8, 16, 32, 32, 64, 64, 128, 128, 128};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // first s = 2^m with 2^{m/2} > M, i.e. 2^m > M²
    const long M = static_cast<long>(i) + 1;
    std::uint64_t s = 1;
    while (static_cast<long>(s) <= M * M) s *= 2;
    EXPECT_EQ(s, expected[i]);
    EXPECT_EQ(rows[i].result, FamilyResult::violated_at(s)) << "M=" << M;
    EXPECT_EQ(to_string(rows[i].family), "FMk:" + std::to_string(M) + "/1:1");
  }
}

TEST(Decompose, FamiliesPerSpace) {
  const Grid g{{Rational(2)}, {Rational(3)}};
  auto fam = [&](const SpaceId& x) { return to_string(decompose_report(zero_sequence(), x, g, 8, kPrec).at(0).family); };
  EXPECT_EQ(fam(SpaceId::ainf()), "FMk:3/1:2");
  EXPECT_EQ(fam(SpaceId::lp(Rational(1))), "psum:1/1:3/1");
  EXPECT_EQ(fam(SpaceId::cap_lp(Rational(1))), "psum:3/2:3/1");
  EXPECT_EQ(fam(SpaceId::c0()), "Fnk:3:2");
  EXPECT_EQ(fam(SpaceId::linf()), "FM:3/1");
  EXPECT_EQ(fam(SpaceId::hd()), "Fkj:3:2");
  EXPECT_EQ(decompose_report(zero_sequence(), SpaceId::linf(), {{}, {Rational(1)}}, 8, kPrec).at(0).result,
            FamilyResult::consistent_up_to(8));
  const auto hd = decompose_report(nat(), SpaceId::hd(), {{Rational(1), Rational(2)}, {Rational(1)}}, kBudget, kPrec);
  ASSERT_EQ(hd.size(), 2u);
  for (const auto& r : hd) EXPECT_FALSE(r.result.violated);
}

TEST(Decompose, Errors) {
  const Grid g{{Rational(1)}, {Rational(1)}};
  try {
    decompose_report(nat(), SpaceId::cn0(), g, 8, kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedSpace);
  }
  EXPECT_THROW(decompose_report(nat(), SpaceId::c0(), {{Rational(0)}, {Rational(1)}}, 8, kPrec), Error);
  EXPECT_THROW(decompose_report(nat(), SpaceId::ainf(), {{Rational(1, 2)}, {Rational(1)}}, 8, kPrec), Error);
}

// ---------------------------------------------------------------------------
// Brute force on finite rational data

TEST(FamilyCheck, AgreesWithBruteForce) {
  gen::Gen g(2024);
  for (FamilyKind kind : {FamilyKind::FMk, FamilyKind::PartialSum, FamilyKind::Fnk, FamilyKind::FM, FamilyKind::Fkj}) {
    for (int i = 0; i < 150; ++i) {
      bool real_only = false;
      const FamilyRef f = random_family(g, kind, real_only);
      const Finite a = random_finite(g, !real_only);
      const std::uint64_t budget = g.below(14);
      EXPECT_EQ(closed_family_check(a.seq, f, budget, kPrec), brute(a, f, budget))
          << to_string(f) << " on " << a.seq.to_spec().dump() << " budget " << budget;
    }
  }
}

TEST(FamilyCheck, LargerBudgetsNeverContradict) {
  const std::vector<FamilyRef> fams = {FamilyRef::fmk(Rational(3), 1), FamilyRef::psum(Rational(2), Rational(3, 2)),
                                       FamilyRef::fnk(2, 3), FamilyRef::fm(Rational(5)), FamilyRef::fkj(2, 2)};
  for (const auto& [name, a] : catalog())
    for (const auto& f : fams) {
      const FamilyResult small = closed_family_check(a, f, 64, kPrec);
      const FamilyResult large = closed_family_check(a, f, 512, kPrec);
      if (small.violated) { EXPECT_EQ(large, small) << name << " " << to_string(f); }
      if (large.violated && !small.violated) { EXPECT_GT(large.index, 64u) << name << " " << to_string(f); }
    }
}

// ---------------------------------------------------------------------------
// Soundness over the catalog

TEST(Soundness, NeverBothInAndOut) {
  for (const auto& [name, a] : catalog())
    for (const auto& x : all_spaces()) {
      const auto out = find_out(a, x, kBudget, kPrec);
      const auto in = find_in(a, x, kBudget, kPrec);
      EXPECT_FALSE(out && in) << name << " in " << to_string(x);
    }
}

TEST(Soundness, InIsClosedUpward) {
  const auto spaces = all_spaces();
  for (const auto& [name, a] : catalog()) {
    std::vector<Verdict> v;
    for (const auto& x : spaces) v.push_back(classify(a, x, kBudget, kPrec));
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      if (v[i].kind != VerdictKind::Undecided) { EXPECT_TRUE(check_certificate(a, v[i], 0, kPrec)) << name; }
      for (std::size_t k = 0; k < spaces.size(); ++k) {
        if (!strictly_included(spaces[i], spaces[k])) continue;
        if (v[i].kind == VerdictKind::In) { EXPECT_NE(v[k].kind, VerdictKind::Out) << name << " " << to_string(spaces[k]); }
        if (v[k].kind == VerdictKind::Out) { EXPECT_NE(v[i].kind, VerdictKind::In) << name << " " << to_string(spaces[i]); }
      }
    }
  }
}

TEST(Soundness, ExpectedCatalogVerdicts) {
  auto kind = [](const Sequence& a, const SpaceId& x) { return classify(a, x, kBudget, kPrec).kind; };
  EXPECT_EQ(kind(const_one(), SpaceId::c0()), VerdictKind::Out);
  EXPECT_EQ(kind(const_one(), SpaceId::linf()), VerdictKind::In);
  EXPECT_EQ(kind(prop28(), SpaceId::lp(Rational(1))), VerdictKind::In);
  EXPECT_EQ(kind(gap_lp_cap(Rational(1)), SpaceId::lp(Rational(1))), VerdictKind::Out);
  EXPECT_EQ(kind(gap_lp_cap(Rational(1)), SpaceId::cap_lp(Rational(1))), VerdictKind::In);
  EXPECT_EQ(kind(nat_power(), SpaceId::cn0()), VerdictKind::In);
  EXPECT_EQ(kind(nat(), SpaceId::ainf()), VerdictKind::Out);
}
