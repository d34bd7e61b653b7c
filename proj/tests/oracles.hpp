#pragma once

// Shared test fixtures: a catalog of sequences and spaces, and exact brute-force
// oracles for the closed families on finite rational data.

#include "gen.hpp"
#include "seqchain/witness.hpp"

namespace seqchain::oracle {

inline std::vector<SpaceId> all_spaces() {
  auto s = chain(Rational(1), Rational(2));
  s.push_back(SpaceId::lp(Rational(3, 2)));
  s.push_back(SpaceId::cap_lp(Rational(0)));
  s.push_back(SpaceId::lp(Rational(1, 2)));
  return s;
}

inline std::vector<std::pair<std::string, Sequence>> catalog() {
  return {{"zero", zero_sequence()},
          {"unit3", unit_sequence(3)},
          {"nat", nat()},
          {"nat-power", nat_power()},
          {"prop28", prop28()},
          {"rem29-all", rem29(SupportSet::all())},
          {"rem29-evens", rem29(SupportSet::arith(0, 2))},
          {"const-one", const_one()},
          {"gap-lp-cap", gap_lp_cap(Rational(1))},
          {"gap-cap-lp", gap_cap_lp(Rational(1), Rational(2))},
          {"gap-cap-c0", gap_cap_c0(Rational(2))},
          {"nn-powers", nn_on_support(SupportSet::powers_of_two())},
          {"nat-on-evens", spread(nat(), SupportSet::arith(0, 2))},
          {"mixed", combine({ComplexRational(Rational(1)), ComplexRational(Rational(0), Rational(2))},
                            {prop28(), gap_lp_cap(Rational(1))})}};
}

struct Finite {
  std::map<std::uint64_t, ComplexRational> entries;
  Sequence seq = zero_sequence();
  Rational abs2(std::uint64_t n) const {
    auto it = entries.find(n);
    return it == entries.end() ? Rational(0) : it->second.abs2();
  }
};

inline Finite random_finite(gen::Gen& g, bool complex) {
  Finite f;
  const auto len = g.below(10);
  for (std::uint64_t n = 0; n < len; ++n)
    if (g.below(3) != 0) {
      auto z = g.gaussian(complex);
      if (!z.is_zero()) f.entries.emplace(n, z);
    }
  f.seq = finite_sequence(f.entries);
  return f;
}

inline Rational power(const Rational& q, std::uint64_t e) { return pow(q, static_cast<long>(e)); }

inline FamilyResult brute(const Finite& a, const FamilyRef& f, std::uint64_t budget) {
  for (std::uint64_t n = 0; n <= budget; ++n) {
    const Rational m2 = a.abs2(n);
    switch (f.kind) {
      case FamilyKind::FMk:
        if (f.M < 0 || power(from_u64(n), 2 * f.k) * m2 > f.M * f.M) return FamilyResult::violated_at(n);
        break;
      case FamilyKind::FM:
        if (f.M < 0 || m2 > f.M * f.M) return FamilyResult::violated_at(n);
        break;
      case FamilyKind::Fnk:
        if (n >= f.n && m2 * from_u64(f.k * f.k) > 1) return FamilyResult::violated_at(n);
        break;
      case FamilyKind::Fkj:
        if (n >= f.k && m2 > power(1 + Rational(1) / from_u64(f.j), 2 * n)) return FamilyResult::violated_at(n);
        break;
      case FamilyKind::PartialSum: break;
    }
  }
  if (f.kind == FamilyKind::PartialSum) {
    // p ∈ {1, 2, 4}; p = 1 only on real data, so every |a_n|^p is rational
    Rational s(0);
    for (std::uint64_t n = 0; n <= budget; ++n) {
      const Rational m2 = a.abs2(n);
      if (f.p == 1) {
        auto it = a.entries.find(n);
        s += it == a.entries.end() ? Rational(0) : Rational(abs(it->second.re));
      } else if (f.p == 2) {
        s += m2;
      } else {
        s += m2 * m2;
      }
      if (s > f.M) return FamilyResult::violated_at(n);
    }
  }
  return FamilyResult::consistent_up_to(budget);
}

inline FamilyRef random_family(gen::Gen& g, FamilyKind kind, bool& real_only) {
  real_only = false;
  switch (kind) {
    case FamilyKind::FMk: return FamilyRef::fmk(make_rational(g.between(-1, 40), g.between(1, 4)), g.below(3));
    case FamilyKind::FM: return FamilyRef::fm(make_rational(g.between(-1, 12), g.between(1, 4)));
    case FamilyKind::Fnk: return FamilyRef::fnk(g.below(8), 1 + g.below(4));
    case FamilyKind::Fkj: return FamilyRef::fkj(g.below(6), 1 + g.below(3));
    case FamilyKind::PartialSum: {
      const long p[] = {1, 2, 4};
      const long pick = p[g.below(3)];
      real_only = pick == 1;
      return FamilyRef::psum(Rational(pick), make_rational(g.between(-1, 60), g.between(1, 3)));
    }
  }
  return FamilyRef::fm(Rational(1));
}

}  // namespace seqchain::oracle
