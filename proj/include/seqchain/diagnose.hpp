#pragma once

// Three-valued membership verdicts. Out-certificates come from closed-form
// growth tags spot-checked at sample indices; in-certificates from an exact
// head plus the sequence's tail oracles. Plain finite data is in every space.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqchain/spaces.hpp"

namespace seqchain {

inline constexpr unsigned kDefaultSamples = 10;
inline constexpr unsigned kMinSamples = 2;
inline constexpr std::uint64_t kHeadCap = 256;
inline constexpr unsigned kScheduleLength = 8;
inline constexpr unsigned kVanishingSteps = 4;

enum class OutShape { DivergentPartialSums, UnboundedWeighted, NotVanishing, Unbounded, RootLimsupExceeds };

inline std::string to_string(OutShape s) {
  switch (s) {
    case OutShape::DivergentPartialSums: return "DivergentPartialSums";
    case OutShape::UnboundedWeighted: return "UnboundedWeighted";
    case OutShape::NotVanishing: return "NotVanishing";
    case OutShape::Unbounded: return "Unbounded";
    case OutShape::RootLimsupExceeds: return "RootLimsupExceeds";
  }
  return "?";
}

/// The largest space a shape excludes the sequence from.
inline SpaceId excluded_space(OutShape s, const Rational& p) {
  switch (s) {
    case OutShape::DivergentPartialSums: return SpaceId::lp(p);
    case OutShape::UnboundedWeighted: return SpaceId::ainf();
    case OutShape::NotVanishing: return SpaceId::c0();
    case OutShape::Unbounded: return SpaceId::linf();
    case OutShape::RootLimsupExceeds: return SpaceId::hd();
  }
  return SpaceId::ainf();
}

struct OutSample {
  std::uint64_t m = 0;
  std::uint64_t index = 0;
  Rational bound;  // upper rounding of g(m) (or ρ(m))
};

struct OutCert {
  SpaceId space;
  OutShape shape = OutShape::Unbounded;
  Rational p{0};      // DivergentPartialSums
  unsigned k = 0;     // UnboundedWeighted
  Rational delta{0};  // NotVanishing
  Rational rho{0};    // RootLimsupExceeds
  std::string tag;    // label of the growth tag on the sequence
  ComplexRational scale{Rational(1)};
  std::vector<OutSample> samples;
};

enum class InShape { Trivial, FiniteSupport, LpTail, CapLpSchedule, SupBound, Vanishing, DiscTails };

inline std::string to_string(InShape s) {
  switch (s) {
    case InShape::Trivial: return "Trivial";
    case InShape::FiniteSupport: return "FiniteSupport";
    case InShape::LpTail: return "LpTail";
    case InShape::CapLpSchedule: return "CapLpSchedule";
    case InShape::SupBound: return "SupBound";
    case InShape::Vanishing: return "Vanishing";
    case InShape::DiscTails: return "DiscTails";
  }
  return "?";
}

/// One certified bound: head over n ≤ N (exact or rounded up) plus an oracle tail over n > N.
/// Vanishing steps only need the tail, and leave head at 0.
struct InStep {
  Rational param;  // p, ε or r depending on the shape
  std::int64_t N = -1;
  Rational head{0};
  Rational tail{0};
};

struct InCert {
  SpaceId space;
  InShape shape = InShape::Trivial;
  std::uint64_t support_end = 0;  // FiniteSupport
  std::optional<ExponentDomain> domain;
  std::vector<InStep> steps;
};

enum class VerdictKind { In, Out, Undecided };

struct Verdict {
  VerdictKind kind = VerdictKind::Undecided;
  std::optional<InCert> in;
  std::optional<OutCert> out;
  std::uint64_t budget = 0;

  static Verdict certified_in(InCert c, std::uint64_t budget) { return {VerdictKind::In, std::move(c), {}, budget}; }
  static Verdict certified_out(OutCert c, std::uint64_t budget) { return {VerdictKind::Out, {}, std::move(c), budget}; }
  static Verdict undecided(std::uint64_t budget) { return {VerdictKind::Undecided, {}, {}, budget}; }
};

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::In: return "in";
    case VerdictKind::Out: return "out";
    case VerdictKind::Undecided: return "undecided";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exact comparisons of term magnitudes

namespace detail {

inline PowerProduct scale_magnitude(const ComplexRational& c) {
  PowerProduct p;
  if (c.im == 0) p.times(abs(c.re), Rational(1));
  else p.times(c.abs2(), Rational(1, 2));
  return p;
}

/// True iff |a_n| · weight provably exceeds `threshold` (weight ≥ 0). Exact terms
/// compare exactly; otherwise the enclosure is refined up to a retry cap and
/// unresolved cases count as no violation.
inline bool provably_exceeds(const Sequence& a, std::uint64_t n, const PowerProduct& weight,
                             const PowerProduct& threshold, unsigned prec) {
  if (auto e = a.exact_term(n)) {
    PowerProduct lhs = e->magnitude();
    lhs.times(weight);
    return compare(lhs, threshold) > 0;
  }
  const Rational t_hi = threshold.bound(Round::Up, bound_bits(prec));
  const Rational w_lo = weight.bound(Round::Down, bound_bits(prec));
  for (unsigned p = prec; p <= prec * 8; p *= 2) {
    const Interval s = abs2(a.term_at(n, p));
    const Rational lhs = sqrt_bound(s.lo, Round::Down, bound_bits(p)) * w_lo;
    if (lhs > t_hi) return true;
    const Rational rhs_lo = threshold.bound(Round::Down, bound_bits(p));
    const Rational w_hi = weight.bound(Round::Up, bound_bits(p));
    if (sqrt_bound(s.hi, Round::Up, bound_bits(p)) * w_hi <= rhs_lo) return false;
  }
  return false;
}

/// |a_n| · weight ≥ threshold, provably.
inline bool provably_at_least(const Sequence& a, std::uint64_t n, const PowerProduct& weight,
                              const PowerProduct& threshold, unsigned prec) {
  if (auto e = a.exact_term(n)) {
    PowerProduct lhs = e->magnitude();
    lhs.times(weight);
    return compare(lhs, threshold) >= 0;
  }
  const Rational t_hi = threshold.bound(Round::Up, bound_bits(prec));
  for (unsigned p = prec; p <= prec * 8; p *= 2) {
    const Interval s = abs2(a.term_at(n, p));
    if (sqrt_bound(s.lo, Round::Down, bound_bits(p)) * weight.bound(Round::Down, bound_bits(p)) >= t_hi) return true;
  }
  return false;
}

inline OutShape shape_of(const GrowthTag& t) {
  switch (t.kind) {
    case GrowthKind::PartialSumLowerBound: return OutShape::DivergentPartialSums;
    case GrowthKind::RootLowerBound: return OutShape::RootLimsupExceeds;
    case GrowthKind::SubseqLowerBound:
      if (t.weight > 0) return OutShape::UnboundedWeighted;
      return t.divergent ? OutShape::Unbounded : OutShape::NotVanishing;
  }
  return OutShape::Unbounded;
}

/// The sample points m ≥ first_m whose index stays within the budget.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_points(const GrowthTag& t, unsigned samples,
                                                                          std::uint64_t budget) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t m = t.first_m; out.size() < samples; ++m) {
    std::uint64_t s;
    try {
      s = t.index(m);
    } catch (const Error&) {
      break;
    }
    if (s > budget) break;
    out.emplace_back(m, s);
  }
  return out;
}

/// Re-evaluates the claims of `cert` against tag `t` at the recorded samples.
inline bool check_claims(const Sequence& a, const GrowthTag& t, const OutCert& cert, unsigned prec) {
  if (cert.samples.size() < kMinSamples) return false;
  if (shape_of(t) != cert.shape) return false;
  if (cert.shape == OutShape::DivergentPartialSums && t.exponent != cert.p) return false;
  if (cert.shape == OutShape::UnboundedWeighted && t.weight != cert.k) return false;
  const bool must_grow = cert.shape != OutShape::NotVanishing && cert.shape != OutShape::RootLimsupExceeds;
  if (must_grow && !t.divergent) return false;
  if (cert.shape == OutShape::NotVanishing && cert.delta <= 0) return false;
  if (cert.shape == OutShape::RootLimsupExceeds && cert.rho <= 1) return false;

  std::optional<PowerProduct> prev_bound;
  std::uint64_t prev_index = 0;
  // running partial sum for DivergentPartialSums
  Rational partial(0);
  std::uint64_t summed_to = 0;
  bool started = false;
  for (const auto& smp : cert.samples) {
    if (t.index(smp.m) != smp.index) return false;
    if (started && smp.index <= prev_index) return false;
    const PowerProduct g = t.bound(smp.m);
    if (g.bound(Round::Up, bound_bits(prec)) != smp.bound) return false;
    switch (cert.shape) {
      case OutShape::UnboundedWeighted:
      case OutShape::Unbounded:
      case OutShape::NotVanishing: {
        PowerProduct w;
        w.times(from_u64(smp.index), Rational(cert.k));
        if (!provably_at_least(a, smp.index, w, g, prec)) return false;
        if (cert.shape == OutShape::NotVanishing && compare(g, PowerProduct(cert.delta)) < 0) return false;
        break;
      }
      case OutShape::RootLimsupExceeds: {
        if (compare(g, PowerProduct(cert.rho)) < 0) return false;
        if (!provably_at_least(a, smp.index, PowerProduct(), g.raised(from_u64(smp.index)), prec)) return false;
        break;
      }
      case OutShape::DivergentPartialSums: {
        for (std::uint64_t n = started ? summed_to + 1 : 0; n <= smp.index; ++n)
          partial += a.magnitude_pow(n, cert.p, prec).lo;
        summed_to = smp.index;
        if (auto ge = g.exact()) {
          if (partial < *ge) return false;
        } else if (partial < g.bound(Round::Up, bound_bits(prec))) {
          return false;
        }
        break;
      }
    }
    if (must_grow && prev_bound && compare(g, *prev_bound) <= 0) return false;
    prev_bound = g;
    prev_index = smp.index;
    started = true;
  }
  return true;
}

inline const GrowthTag* find_tag(const std::vector<GrowthTag>& tags, const std::string& label) {
  for (const auto& t : tags)
    if (t.label == label) return &t;
  return nullptr;
}

}  // namespace detail

/// An out-certificate for X from the sequence's growth tags, if any verifies.
inline std::optional<OutCert> find_out(const Sequence& a, const SpaceId& x, std::uint64_t budget, unsigned prec,
                                       unsigned samples = kDefaultSamples) {
  if (x.tag == SpaceTag::CN0) return std::nullopt;
  for (const auto& t : a.growth_tags()) {
    OutCert c;
    c.space = x;
    c.shape = detail::shape_of(t);
    c.tag = t.label;
    if (c.shape == OutShape::DivergentPartialSums) c.p = t.exponent;
    if (c.shape == OutShape::UnboundedWeighted) c.k = t.weight;
    if (!included(x, excluded_space(c.shape, c.p))) continue;
    auto points = detail::sample_points(t, samples, budget);
    if (points.empty()) continue;
    if (c.shape == OutShape::NotVanishing) {
      auto d = t.bound(points.front().first).exact();
      if (!d) continue;
      c.delta = *d;
    }
    if (c.shape == OutShape::RootLimsupExceeds) {
      auto r = t.bound(points.front().first).exact();
      if (!r) continue;
      c.rho = *r;
    }
    for (auto [m, s] : points) c.samples.push_back({m, s, t.bound(m).bound(Round::Up, bound_bits(prec))});
    if (detail::check_claims(a, t, c, prec)) return c;
  }
  return std::nullopt;
}

namespace detail {

inline std::int64_t head_end(const Sequence& a, std::uint64_t budget) {
  std::uint64_t h = std::min<std::uint64_t>(std::max<std::uint64_t>(budget, 1), kHeadCap);
  if (auto end = a.support_end()) h = std::min(h, *end);
  return static_cast<std::int64_t>(h) - 1;
}

inline Rational head_pow(const Sequence& a, std::int64_t last, const Rational& p, unsigned prec) {
  Rational s(0);
  for (std::int64_t n = 0; n <= last; ++n) s += a.magnitude_pow(static_cast<std::uint64_t>(n), p, prec).hi;
  return s;
}

inline Rational head_sup(const Sequence& a, std::int64_t last, unsigned prec) {
  Rational s(0);
  for (std::int64_t n = 0; n <= last; ++n) s = std::max(s, a.magnitude(static_cast<std::uint64_t>(n), prec).hi);
  return s;
}

inline Rational head_disc(const Sequence& a, std::int64_t last, const Rational& r, unsigned prec) {
  Rational s(0);
  Rational rn(1);
  for (std::int64_t n = 0; n <= last; ++n) {
    s += a.magnitude(static_cast<std::uint64_t>(n), prec).hi * rn;
    rn *= r;
  }
  return round_bound(s, Round::Up, bound_bits(prec));
}

inline Rational schedule_exponent(const Rational& c, unsigned n) { return Rational(c + Rational(1, n)); }
inline Rational disc_radius(unsigned k) { return make_rational(static_cast<long>(k), static_cast<long>(k + 1)); }
inline Rational vanishing_level(unsigned i) { return make_rational(1, static_cast<long>(i + 1)); }

/// Smallest N among 0, 1, 3, 7, … (capped by the index limit) with sup_tail(N) ≤ ε.
inline std::optional<std::pair<std::int64_t, Rational>> vanishing_index(const Sequence& a, const Rational& eps,
                                                                        unsigned prec) {
  for (std::uint64_t n = 1; n < kIndexLimit; n *= 2) {
    const std::int64_t N = static_cast<std::int64_t>(n - 1);
    auto t = a.sup_tail(N, prec);
    if (!t) return std::nullopt;
    if (*t <= eps) return std::make_pair(N, *t);
  }
  return std::nullopt;
}

}  // namespace detail

/// An in-certificate for Y from the sequence's tail metadata, if one exists.
inline std::optional<InCert> find_in(const Sequence& a, const SpaceId& y, std::uint64_t budget, unsigned prec) {
  InCert c;
  c.space = y;
  if (y.tag == SpaceTag::CN0) {
    c.shape = InShape::Trivial;
    return c;
  }
  if (auto end = a.support_end()) {
    c.shape = InShape::FiniteSupport;
    c.support_end = *end;
    return c;
  }
  const TailProfile prof = a.profile();
  const std::int64_t last = detail::head_end(a, budget);
  switch (y.tag) {
    case SpaceTag::Lp: {
      if (!prof.lp || !prof.lp->contains(y.param)) return std::nullopt;
      auto t = a.tail_pow(last, y.param, prec);
      if (!t) return std::nullopt;
      c.shape = InShape::LpTail;
      c.domain = prof.lp;
      c.steps.push_back({y.param, last, detail::head_pow(a, last, y.param, prec), *t});
      return c;
    }
    case SpaceTag::CapLp: {
      if (!prof.lp || prof.lp->threshold > y.param) return std::nullopt;
      c.shape = InShape::CapLpSchedule;
      c.domain = prof.lp;
      for (unsigned n = 1; n <= kScheduleLength; ++n) {
        const Rational p = detail::schedule_exponent(y.param, n);
        auto t = a.tail_pow(last, p, prec);
        if (!t) return std::nullopt;
        c.steps.push_back({p, last, detail::head_pow(a, last, p, prec), *t});
      }
      return c;
    }
    case SpaceTag::C0: {
      if (!prof.vanishing) return std::nullopt;
      c.shape = InShape::Vanishing;
      for (unsigned i = 1; i <= kVanishingSteps; ++i) {
        const Rational eps = detail::vanishing_level(i);
        auto hit = detail::vanishing_index(a, eps, prec);
        if (!hit) return std::nullopt;
        c.steps.push_back({eps, hit->first, Rational(0), hit->second});
      }
      return c;
    }
    case SpaceTag::Linf: {
      if (!prof.bounded) return std::nullopt;
      auto t = a.sup_tail(last, prec);
      if (!t) return std::nullopt;
      c.shape = InShape::SupBound;
      c.steps.push_back({Rational(0), last, detail::head_sup(a, last, prec), *t});
      return c;
    }
    case SpaceTag::HD: {
      if (!prof.disc) return std::nullopt;
      c.shape = InShape::DiscTails;
      for (unsigned k = 1; k <= kScheduleLength; ++k) {
        const Rational r = detail::disc_radius(k);
        auto t = a.disc_tail(last, r, prec);
        if (!t) return std::nullopt;
        c.steps.push_back({r, last, detail::head_disc(a, last, r, prec), *t});
      }
      return c;
    }
    case SpaceTag::Ainf:
    case SpaceTag::CN0: return std::nullopt;
  }
  return std::nullopt;
}

inline Verdict classify(const Sequence& a, const SpaceId& x, std::uint64_t budget, unsigned prec) {
  if (auto o = find_out(a, x, budget, prec)) return Verdict::certified_out(std::move(*o), budget);
  if (auto i = find_in(a, x, budget, prec)) return Verdict::certified_in(std::move(*i), budget);
  return Verdict::undecided(budget);
}

inline bool check_out(const Sequence& a, const OutCert& c, unsigned prec) {
  if (!included(c.space, excluded_space(c.shape, c.p))) return false;
  const auto tags = a.growth_tags();
  const GrowthTag* t = detail::find_tag(tags, c.tag);
  if (!t) return false;
  try {
    return detail::check_claims(a, *t, c, prec);
  } catch (const Error&) {
    return false;
  }
}

inline bool check_in(const Sequence& a, const InCert& c, unsigned prec) {
  const TailProfile prof = a.profile();
  auto step_ok = [](const InStep& s, const Rational& head, const std::optional<Rational>& tail) {
    return tail && head <= s.head && *tail <= s.tail;
  };
  switch (c.shape) {
    case InShape::Trivial: return c.space.tag == SpaceTag::CN0;
    case InShape::FiniteSupport: {
      auto end = a.support_end();
      return end && *end <= c.support_end;
    }
    case InShape::LpTail: {
      if (c.space.tag != SpaceTag::Lp || c.steps.size() != 1) return false;
      const InStep& s = c.steps[0];
      if (s.param != c.space.param || !prof.lp || !prof.lp->contains(s.param)) return false;
      return step_ok(s, detail::head_pow(a, s.N, s.param, prec), a.tail_pow(s.N, s.param, prec));
    }
    case InShape::CapLpSchedule: {
      if (c.space.tag != SpaceTag::CapLp || c.steps.size() != kScheduleLength) return false;
      if (!prof.lp || prof.lp->threshold > c.space.param) return false;
      for (unsigned n = 1; n <= kScheduleLength; ++n) {
        const InStep& s = c.steps[n - 1];
        if (s.param != detail::schedule_exponent(c.space.param, n)) return false;
        if (!step_ok(s, detail::head_pow(a, s.N, s.param, prec), a.tail_pow(s.N, s.param, prec))) return false;
      }
      return true;
    }
    case InShape::SupBound: {
      if (c.space.tag != SpaceTag::Linf || c.steps.size() != 1 || !prof.bounded) return false;
      const InStep& s = c.steps[0];
      return step_ok(s, detail::head_sup(a, s.N, prec), a.sup_tail(s.N, prec));
    }
    case InShape::Vanishing: {
      if (c.space.tag != SpaceTag::C0 || c.steps.size() != kVanishingSteps || !prof.vanishing) return false;
      for (unsigned i = 1; i <= kVanishingSteps; ++i) {
        const InStep& s = c.steps[i - 1];
        if (s.param != detail::vanishing_level(i)) return false;
        auto t = a.sup_tail(s.N, prec);
        if (!t || *t > s.param || *t > s.tail) return false;
      }
      return true;
    }
    case InShape::DiscTails: {
      if (c.space.tag != SpaceTag::HD || c.steps.size() != kScheduleLength || !prof.disc) return false;
      for (unsigned k = 1; k <= kScheduleLength; ++k) {
        const InStep& s = c.steps[k - 1];
        if (s.param != detail::disc_radius(k)) return false;
        if (!step_ok(s, detail::head_disc(a, s.N, s.param, prec), a.disc_tail(s.N, s.param, prec))) return false;
      }
      return true;
    }
  }
  return false;
}

/// Independent re-verification. `samples` caps how many recorded growth samples
/// are re-evaluated (0 means all).
inline bool check_certificate(const Sequence& a, const Verdict& v, unsigned samples, unsigned prec) {
  if (v.kind == VerdictKind::In && v.in) return check_in(a, *v.in, prec);
  if (v.kind == VerdictKind::Out && v.out) {
    OutCert c = *v.out;
    if (samples > 0 && c.samples.size() > samples) c.samples.resize(samples);
    return check_out(a, c, prec);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Closed families

enum class FamilyKind { FMk, PartialSum, Fnk, FM, Fkj };

/// FMk: n^k|a_n| ≤ M ∀n;  psum: Σ_{n≤N}|a_n|^p ≤ M ∀N;  Fnk: |a_s| ≤ 1/k ∀s ≥ n;
/// FM: |a_n| ≤ M ∀n;  Fkj: |a_n| ≤ (1+1/j)^n ∀n ≥ k.
struct FamilyRef {
  FamilyKind kind = FamilyKind::FM;
  Rational M{0};
  Rational p{1};
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t j = 1;

  static FamilyRef fmk(const Rational& m, std::uint64_t k) { return {FamilyKind::FMk, m, Rational(1), k, 0, 1}; }
  static FamilyRef psum(const Rational& p, const Rational& m) { return {FamilyKind::PartialSum, m, p, 0, 0, 1}; }
  static FamilyRef fnk(std::uint64_t n, std::uint64_t k) { return {FamilyKind::Fnk, Rational(0), Rational(1), k, n, 1}; }
  static FamilyRef fm(const Rational& m) { return {FamilyKind::FM, m, Rational(1), 0, 0, 1}; }
  static FamilyRef fkj(std::uint64_t k, std::uint64_t j) { return {FamilyKind::Fkj, Rational(0), Rational(1), k, 0, j}; }
};

inline std::string to_string(const FamilyRef& f) {
  switch (f.kind) {
    case FamilyKind::FMk: return "FMk:" + to_string(f.M) + ":" + std::to_string(f.k);
    case FamilyKind::PartialSum: return "psum:" + to_string(f.p) + ":" + to_string(f.M);
    case FamilyKind::Fnk: return "Fnk:" + std::to_string(f.n) + ":" + std::to_string(f.k);
    case FamilyKind::FM: return "FM:" + to_string(f.M);
    case FamilyKind::Fkj: return "Fkj:" + std::to_string(f.k) + ":" + std::to_string(f.j);
  }
  return "?";
}

inline FamilyRef parse_family_ref(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  auto nat = [&](const std::string& s) {
    const Rational q = parse_rational(s);
    if (!is_integer(q) || q < 0 || !q.get_num().fits_ulong_p())
      throw Error(ErrorCode::ParseError, "expected a natural number in family '" + std::string(text) + "'");
    return static_cast<std::uint64_t>(q.get_num().get_ui());
  };
  auto want = [&](std::size_t n) {
    if (parts.size() != n) throw Error(ErrorCode::ParseError, "wrong arity in family '" + std::string(text) + "'");
  };
  const std::string& head = parts[0];
  if (head == "FMk") { want(3); return FamilyRef::fmk(parse_rational(parts[1]), nat(parts[2])); }
  if (head == "psum") {
    want(3);
    const Rational p = parse_rational(parts[1]);
    if (p <= 0) throw Error(ErrorCode::ParseError, "psum needs p > 0");
    return FamilyRef::psum(p, parse_rational(parts[2]));
  }
  if (head == "Fnk") {
    want(3);
    const auto k = nat(parts[2]);
    if (k == 0) throw Error(ErrorCode::ParseError, "Fnk needs k ≥ 1");
    return FamilyRef::fnk(nat(parts[1]), k);
  }
  if (head == "FM") { want(2); return FamilyRef::fm(parse_rational(parts[1])); }
  if (head == "Fkj") {
    want(3);
    const auto j = nat(parts[2]);
    if (j == 0) throw Error(ErrorCode::ParseError, "Fkj needs j ≥ 1");
    return FamilyRef::fkj(nat(parts[1]), j);
  }
  throw Error(ErrorCode::ParseError, "unknown family '" + std::string(text) + "'");
}

struct FamilyResult {
  bool violated = false;
  std::uint64_t index = 0;  // ViolatedAt{index} or ConsistentUpTo{index}

  static FamilyResult violated_at(std::uint64_t n) { return {true, n}; }
  static FamilyResult consistent_up_to(std::uint64_t n) { return {false, n}; }
  friend bool operator==(const FamilyResult&, const FamilyResult&) = default;
};

inline Json to_json(const FamilyResult& r) {
  if (r.violated) return {{"result", "ViolatedAt"}, {"n", r.index}};
  return {{"result", "ConsistentUpTo"}, {"n", r.index}};
}

inline FamilyResult closed_family_check(const Sequence& a, const FamilyRef& f, std::uint64_t budget, unsigned prec) {
  const bool bounded_by_m = f.kind == FamilyKind::FMk || f.kind == FamilyKind::FM || f.kind == FamilyKind::PartialSum;
  if (bounded_by_m && f.M < 0) return FamilyResult::violated_at(0);
  std::uint64_t last = budget;
  if (auto end = a.support_end()) {
    if (*end == 0) return FamilyResult::consistent_up_to(budget);
    last = std::min<std::uint64_t>(budget, *end - 1);
  }
  switch (f.kind) {
    case FamilyKind::FMk: {
      const PowerProduct t(f.M);
      for (std::uint64_t n = 0; n <= last; ++n) {
        PowerProduct w;
        w.times(from_u64(n), from_u64(f.k));
        if (detail::provably_exceeds(a, n, w, t, prec)) return FamilyResult::violated_at(n);
      }
      break;
    }
    case FamilyKind::FM: {
      const PowerProduct t(f.M);
      for (std::uint64_t n = 0; n <= last; ++n)
        if (detail::provably_exceeds(a, n, PowerProduct(), t, prec)) return FamilyResult::violated_at(n);
      break;
    }
    case FamilyKind::Fnk: {
      const PowerProduct t(make_rational(1, static_cast<long>(f.k)));
      for (std::uint64_t n = f.n; n <= last; ++n)
        if (detail::provably_exceeds(a, n, PowerProduct(), t, prec)) return FamilyResult::violated_at(n);
      break;
    }
    case FamilyKind::Fkj: {
      const Rational base = 1 + make_rational(1, static_cast<long>(f.j));
      if (f.k > last) break;
      Rational t = pow(base, static_cast<long>(f.k));
      for (std::uint64_t n = f.k; n <= last; ++n) {
        if (detail::provably_exceeds(a, n, PowerProduct(), PowerProduct(t), prec)) return FamilyResult::violated_at(n);
        t *= base;
      }
      break;
    }
    case FamilyKind::PartialSum: {
      Rational lo(0);
      std::vector<std::uint64_t> inexact;
      for (std::uint64_t n = 0; n <= last; ++n) {
        const Interval b = a.magnitude_pow(n, f.p, prec);
        lo += b.lo;
        if (lo > f.M) return FamilyResult::violated_at(n);
        if (!b.is_point()) inexact.push_back(n);
      }
      // Refine irrational terms once more before settling on consistency.
      if (!inexact.empty()) {
        for (unsigned p = prec * 2; p <= prec * 8; p *= 2) {
          Rational s(0);
          for (std::uint64_t n = 0; n <= last; ++n) {
            s += a.magnitude_pow(n, f.p, p).lo;
            if (s > f.M) return FamilyResult::violated_at(n);
          }
        }
      }
      break;
    }
  }
  return FamilyResult::consistent_up_to(budget);
}

// ---------------------------------------------------------------------------
// Decomposition reports

/// Parameter grid: `outer` is k (Ainf), n (CapLp: p_n = c + 1/n), k (C0: ε = 1/k)
/// or j (HD); `inner` is M (Ainf, Lp, CapLp, Linf), n (C0) or k (HD).
struct Grid {
  std::vector<Rational> outer;
  std::vector<Rational> inner;
};

struct ReportRow {
  Rational outer;
  Rational inner;
  FamilyRef family;
  FamilyResult result;
};

inline std::vector<ReportRow> decompose_report(const Sequence& a, const SpaceId& x, const Grid& grid,
                                               std::uint64_t budget, unsigned prec) {
  if (x.tag == SpaceTag::CN0) throw Error(ErrorCode::UnsupportedSpace, "C^N0 has no closed-family decomposition");
  auto nat = [](const Rational& q) {
    if (!is_integer(q) || q < 0) throw Error(ErrorCode::InvalidArgument, "grid value must be a natural number");
    return static_cast<std::uint64_t>(q.get_num().get_ui());
  };
  std::vector<Rational> outer = grid.outer;
  const bool single = x.tag == SpaceTag::Lp || x.tag == SpaceTag::Linf;
  if (single || outer.empty()) outer = {Rational(single ? 0 : 1)};
  std::vector<ReportRow> rows;
  for (const auto& o : outer) {
    for (const auto& i : grid.inner) {
      FamilyRef f;
      switch (x.tag) {
        case SpaceTag::Ainf: f = FamilyRef::fmk(i, nat(o)); break;
        case SpaceTag::Lp: f = FamilyRef::psum(x.param, i); break;
        case SpaceTag::CapLp: {
          const auto n = nat(o);
          if (n == 0) throw Error(ErrorCode::InvalidArgument, "schedule index starts at 1");
          f = FamilyRef::psum(Rational(x.param + Rational(1) / from_u64(n)), i);
          break;
        }
        case SpaceTag::C0: {
          const auto k = nat(o);
          if (k == 0) throw Error(ErrorCode::InvalidArgument, "Fnk needs k ≥ 1");
          f = FamilyRef::fnk(nat(i), k);
          break;
        }
        case SpaceTag::Linf: f = FamilyRef::fm(i); break;
        case SpaceTag::HD: {
          const auto j = nat(o);
          if (j == 0) throw Error(ErrorCode::InvalidArgument, "Fkj needs j ≥ 1");
          f = FamilyRef::fkj(nat(i), j);
          break;
        }
        case SpaceTag::CN0: break;
      }
      rows.push_back({o, i, f, closed_family_check(a, f, budget, prec)});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const OutCert& c) {
  Json samples = Json::array();
  for (const auto& s : c.samples) samples.push_back({{"m", s.m}, {"index", s.index}, {"bound", to_string(s.bound)}});
  Json j = {{"space", to_string(c.space)}, {"shape", to_string(c.shape)}, {"tag", c.tag}, {"samples", samples}};
  switch (c.shape) {
    case OutShape::DivergentPartialSums: j["p"] = to_string(c.p); break;
    case OutShape::UnboundedWeighted: j["k"] = c.k; break;
    case OutShape::NotVanishing: j["delta"] = to_string(c.delta); break;
    case OutShape::RootLimsupExceeds: j["rho"] = to_string(c.rho); break;
    case OutShape::Unbounded: break;
  }
  if (!(c.scale == ComplexRational(Rational(1)))) j["scale"] = {to_string(c.scale.re), to_string(c.scale.im)};
  return j;
}

inline Json to_json(const InCert& c) {
  Json j = {{"space", to_string(c.space)}, {"shape", to_string(c.shape)}};
  if (c.shape == InShape::FiniteSupport) j["support_end"] = c.support_end;
  if (c.domain) j["domain"] = {{"threshold", to_string(c.domain->threshold)}, {"inclusive", c.domain->inclusive}};
  if (!c.steps.empty()) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
      steps.push_back({{"param", to_string(s.param)}, {"N", s.N}, {"head", to_string(s.head)}, {"tail", to_string(s.tail)}});
    j["steps"] = steps;
  }
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j = {{"verdict", to_string(v.kind)}, {"budget", v.budget}};
  if (v.in) j["certificate"] = to_json(*v.in);
  else if (v.out) j["certificate"] = to_json(*v.out);
  else j["certificate"] = nullptr;
  return j;
}

}  // namespace seqchain
