#pragma once

// The chain  A^∞ ⊊ ∩ℓ^p ⊊ ℓ^a ⊊ ∩_{q>a}ℓ^q ⊊ … ⊊ c0 ⊊ ℓ^∞ ⊊ H(D) ⊊ C^N0
// and the coefficient metrics used on each member.

#include <compare>
#include <deque>
#include <string>
#include <vector>

#include "seqchain/sequence.hpp"

namespace seqchain {

enum class SpaceTag { Ainf, CapLp, Lp, C0, Linf, HD, CN0 };

struct SpaceId {
  SpaceTag tag = SpaceTag::CN0;
  Rational param{0};

  static SpaceId ainf() { return {SpaceTag::Ainf, Rational(0)}; }
  static SpaceId cap_lp(const Rational& a) {
    if (a < 0) throw Error(ErrorCode::InvalidArgument, "cap-lp needs a ≥ 0");
    return {SpaceTag::CapLp, a};
  }
  static SpaceId lp(const Rational& p) {
    if (p <= 0) throw Error(ErrorCode::InvalidArgument, "lp needs p > 0");
    return {SpaceTag::Lp, p};
  }
  static SpaceId c0() { return {SpaceTag::C0, Rational(0)}; }
  static SpaceId linf() { return {SpaceTag::Linf, Rational(0)}; }
  static SpaceId hd() { return {SpaceTag::HD, Rational(0)}; }
  static SpaceId cn0() { return {SpaceTag::CN0, Rational(0)}; }

  bool is_tower() const { return tag == SpaceTag::Lp || tag == SpaceTag::CapLp; }

  friend bool operator==(const SpaceId& a, const SpaceId& b) {
    return a.tag == b.tag && (!a.is_tower() || a.param == b.param);
  }
};

inline std::string to_string(const SpaceId& s) {
  switch (s.tag) {
    case SpaceTag::Ainf: return "ainf";
    case SpaceTag::CapLp: return "cap-lp:" + to_string(s.param);
    case SpaceTag::Lp: return "lp:" + to_string(s.param);
    case SpaceTag::C0: return "c0";
    case SpaceTag::Linf: return "linf";
    case SpaceTag::HD: return "hd";
    case SpaceTag::CN0: return "cn0";
  }
  return "?";
}

inline SpaceId parse_space(std::string_view text) {
  const std::string s(text);
  if (s == "ainf") return SpaceId::ainf();
  if (s == "c0") return SpaceId::c0();
  if (s == "linf") return SpaceId::linf();
  if (s == "hd") return SpaceId::hd();
  if (s == "cn0") return SpaceId::cn0();
  auto param = [&](std::size_t prefix) {
    try {
      return parse_rational(s.substr(prefix));
    } catch (const Error&) {
      throw Error(ErrorCode::UnknownSpace, "bad parameter in space '" + s + "'");
    }
  };
  try {
    if (s.rfind("cap-lp:", 0) == 0) return SpaceId::cap_lp(param(7));
    if (s.rfind("lp:", 0) == 0) return SpaceId::lp(param(3));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownSpace) throw;
    throw Error(ErrorCode::UnknownSpace, "invalid parameter in space '" + s + "'");
  }
  throw Error(ErrorCode::UnknownSpace, "unknown space '" + s + "'");
}

/// Position in the chain. Lp(p) sits just below CapLp(p); CapLp(0) is the
/// bottom of the ℓ^p tower.
inline std::strong_ordering chain_order(const SpaceId& x, const SpaceId& y) {
  auto rank = [](SpaceTag t) {
    switch (t) {
      case SpaceTag::Ainf: return 0;
      case SpaceTag::CapLp:
      case SpaceTag::Lp: return 1;
      case SpaceTag::C0: return 2;
      case SpaceTag::Linf: return 3;
      case SpaceTag::HD: return 4;
      case SpaceTag::CN0: return 5;
    }
    return 6;
  };
  if (auto c = rank(x.tag) <=> rank(y.tag); c != 0) return c;
  if (!x.is_tower()) return std::strong_ordering::equal;
  if (x.param < y.param) return std::strong_ordering::less;
  if (x.param > y.param) return std::strong_ordering::greater;
  const int cx = x.tag == SpaceTag::CapLp ? 1 : 0;
  const int cy = y.tag == SpaceTag::CapLp ? 1 : 0;
  return cx <=> cy;
}

inline bool strictly_included(const SpaceId& x, const SpaceId& y) { return chain_order(x, y) < 0; }

/// X ⊆ Y (the chain is totally ordered by inclusion).
inline bool included(const SpaceId& x, const SpaceId& y) { return chain_order(x, y) <= 0; }

/// The ten-member chain with parameters a < b.
inline std::vector<SpaceId> chain(const Rational& a = Rational(1), const Rational& b = Rational(2)) {
  return {SpaceId::ainf(), SpaceId::cap_lp(Rational(0)), SpaceId::lp(a), SpaceId::cap_lp(a), SpaceId::lp(b),
          SpaceId::cap_lp(b), SpaceId::c0(),  SpaceId::linf(), SpaceId::hd(),   SpaceId::cn0()};
}

// ---------------------------------------------------------------------------
// Metrics

struct MetricBound {
  Rational lower;
  Rational upper;

  bool contains(const Rational& d) const { return lower <= d && d <= upper; }
  friend bool operator==(const MetricBound&, const MetricBound&) = default;
};

namespace detail {

inline Rational ratio_over_one_plus(const Rational& q) { return Rational(q / (1 + q)); }

/// Outer truncation of the weighted series Σ 2^(-k)(·), whose tail beyond K is ≤ 2^(-K).
inline std::uint64_t outer_terms(std::uint64_t budget, unsigned prec) {
  return std::max<std::uint64_t>(1, std::min<std::uint64_t>(budget, prec + 16));
}

class DifferenceView {
 public:
  DifferenceView(const Sequence& a, const Sequence& b, std::uint64_t budget, unsigned prec)
      : diff_(combine({ComplexRational(Rational(1)), ComplexRational(Rational(-1))}, {a, b})),
        prec_(prec) {
    last_ = budget;
    if (auto end = diff_.support_end()) last_ = std::min<std::uint64_t>(budget, *end == 0 ? 0 : *end - 1);
    empty_ = diff_.support_end() && *diff_.support_end() == 0;
  }

  const Sequence& seq() const { return diff_; }
  std::int64_t head_end() const { return empty_ ? -1 : static_cast<std::int64_t>(last_); }

  /// Bounds on |a_n - b_n|^p for n = 0..head_end().
  std::vector<Interval> pow_bounds(const Rational& p) const {
    std::vector<Interval> out;
    for (std::int64_t n = 0; n <= head_end(); ++n) out.push_back(diff_.magnitude_pow(static_cast<std::uint64_t>(n), p, prec_));
    return out;
  }

  const std::vector<Interval>& magnitudes() const {
    if (!mags_) mags_ = pow_bounds(Rational(1));
    return *mags_;
  }

  Rational tail_pow(const Rational& p) const {
    auto t = diff_.tail_pow(head_end(), p, prec_);
    if (!t) throw Error(ErrorCode::MissingTailOracle, "no ℓ^" + to_string(p) + " tail bound for the difference");
    return *t;
  }
  Rational sup_tail() const {
    auto t = diff_.sup_tail(head_end(), prec_);
    if (!t) throw Error(ErrorCode::MissingTailOracle, "no sup tail bound for the difference");
    return *t;
  }
  Rational disc_tail(const Rational& r) const {
    auto t = diff_.disc_tail(head_end(), r, prec_);
    if (!t) throw Error(ErrorCode::MissingTailOracle, "no disc tail bound for the difference");
    return *t;
  }

 private:
  Sequence diff_;
  unsigned prec_;
  std::uint64_t last_ = 0;
  bool empty_ = false;
  mutable std::optional<std::vector<Interval>> mags_;
};

inline MetricBound lp_metric(const DifferenceView& d, const Rational& p, unsigned prec) {
  const unsigned bits = bound_bits(prec);
  Rational lo(0), hi(0);
  if (p == 1) {
    for (const auto& m : d.magnitudes()) lo += m.lo, hi += m.hi;
  } else {
    for (const auto& m : d.pow_bounds(p)) lo += m.lo, hi += m.hi;
  }
  hi += d.tail_pow(p);
  if (p <= 1) return {lo, hi};
  const Rational inv = 1 / p;
  return {pow_bound(lo, inv, Round::Down, bits), pow_bound(hi, inv, Round::Up, bits)};
}

inline MetricBound sup_metric(const DifferenceView& d) {
  Rational lo(0), hi(0);
  for (const auto& m : d.magnitudes()) lo = std::max(lo, m.lo), hi = std::max(hi, m.hi);
  hi = std::max(hi, d.sup_tail());
  return {lo, hi};
}

inline MetricBound cap_lp_metric(const DifferenceView& d, const Rational& a, std::uint64_t budget, unsigned prec) {
  const std::uint64_t k_max = outer_terms(budget, prec);
  Rational lo(0), hi(0);
  for (std::uint64_t n = 1; n <= k_max; ++n) {
    const Rational w = two_pow(-static_cast<long>(n));
    const MetricBound q = lp_metric(d, Rational(a + Rational(1) / from_u64(n)), prec);
    lo += w * ratio_over_one_plus(q.lower);
    hi += w * ratio_over_one_plus(q.upper);
  }
  hi += two_pow(-static_cast<long>(k_max));
  return {lo, hi};
}

inline MetricBound hd_metric(const DifferenceView& d, std::uint64_t budget, unsigned prec) {
  const unsigned bits = bound_bits(prec);
  const std::uint64_t k_max = outer_terms(budget, prec);
  const auto& mags = d.magnitudes();
  std::deque<MpfrValue> m_lo, m_hi;
  for (const auto& m : mags) {
    mpfr_set_q(m_lo.emplace_back(bits).get(), m.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(m_hi.emplace_back(bits).get(), m.hi.get_mpq_t(), MPFR_RNDU);
  }
  MpfrValue r_lo(bits), r_hi(bits), p_lo(bits), p_hi(bits), s_lo(bits), s_hi(bits);
  Rational lo(0), hi(0);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const Rational r = make_rational(static_cast<long>(k), static_cast<long>(k + 1));
    mpfr_set_q(r_lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r_hi.get(), r.get_mpq_t(), MPFR_RNDU);
    mpfr_set_ui(p_lo.get(), 1, MPFR_RNDN);
    mpfr_set_ui(p_hi.get(), 1, MPFR_RNDN);
    mpfr_set_zero(s_lo.get(), 1);
    mpfr_set_zero(s_hi.get(), 1);
    for (std::size_t n = 0; n < mags.size(); ++n) {
      if (n > 0) {
        mpfr_mul(p_lo.get(), p_lo.get(), r_lo.get(), MPFR_RNDD);
        mpfr_mul(p_hi.get(), p_hi.get(), r_hi.get(), MPFR_RNDU);
      }
      if (mpfr_zero_p(m_hi[n].get())) continue;
      mpfr_fma(s_lo.get(), m_lo[n].get(), p_lo.get(), s_lo.get(), MPFR_RNDD);
      mpfr_fma(s_hi.get(), m_hi[n].get(), p_hi.get(), s_hi.get(), MPFR_RNDU);
      if (mpfr_cmp_ui(s_lo.get(), 1) >= 0) break;
    }
    const Rational w = two_pow(-static_cast<long>(k));
    lo += w * std::min(Rational(1), s_lo.to_rational());
    const Rational head_hi = s_hi.to_rational();
    if (head_hi >= 1) {
      hi += w;
    } else {
      hi += w * std::min(Rational(1), Rational(head_hi + d.disc_tail(r)));
    }
  }
  hi += two_pow(-static_cast<long>(k_max));
  return {lo, round_bound(hi, Round::Up, bits)};
}

inline MetricBound cn0_metric(const DifferenceView& d, std::uint64_t budget, unsigned prec) {
  if (d.head_end() < 0) return {Rational(0), Rational(0)};
  const std::uint64_t last = std::min<std::uint64_t>(static_cast<std::uint64_t>(d.head_end()), outer_terms(budget, prec));
  Rational lo(0), hi(0);
  for (std::uint64_t n = 0; n <= last; ++n) {
    const Interval m = d.seq().magnitude(n, prec);
    const Rational w = two_pow(-static_cast<long>(n));
    lo += w * ratio_over_one_plus(m.lo);
    hi += w * ratio_over_one_plus(m.hi);
  }
  const bool covered = d.seq().support_end() && last + 1 >= *d.seq().support_end();
  if (!covered) hi += two_pow(-static_cast<long>(last));
  return {lo, hi};
}

// Σ_i 2^(-i) q_i/(1+q_i) with q_i = Σ_n n!/(n-i)! |a_n - b_n|; finite supports only.
inline MetricBound ainf_metric(const DifferenceView& d, std::uint64_t budget, unsigned prec) {
  if (!d.seq().support_end() || static_cast<std::uint64_t>(d.head_end() + 1) < *d.seq().support_end())
    throw Error(ErrorCode::MissingTailOracle, "the A^∞ metric is only evaluated on finite supports");
  const std::uint64_t k_max = outer_terms(budget, prec);
  const auto& mags = d.magnitudes();
  Rational lo(0), hi(0);
  for (std::uint64_t i = 0; i <= k_max && i < mags.size(); ++i) {
    Rational q_lo(0), q_hi(0);
    for (std::uint64_t n = i; n < mags.size(); ++n) {
      Integer falling(1);
      for (std::uint64_t t = 0; t < i; ++t) falling *= Integer(static_cast<unsigned long>(n - t));
      q_lo += Rational(falling) * mags[n].lo;
      q_hi += Rational(falling) * mags[n].hi;
    }
    const Rational w = two_pow(-static_cast<long>(i));
    lo += w * ratio_over_one_plus(q_lo);
    hi += w * ratio_over_one_plus(q_hi);
  }
  if (mags.size() > k_max + 1) hi += two_pow(-static_cast<long>(k_max));
  return {lo, hi};
}

}  // namespace detail

/// Bounds on d_Y(a, b) from the terms n ≤ budget plus certified tails.
inline MetricBound metric_bound(const SpaceId& y, const Sequence& a, const Sequence& b, std::uint64_t budget,
                                unsigned prec) {
  if (a.same_as(b)) return {Rational(0), Rational(0)};
  const detail::DifferenceView d(a, b, budget, prec);
  switch (y.tag) {
    case SpaceTag::Lp: return detail::lp_metric(d, y.param, prec);
    case SpaceTag::C0:
    case SpaceTag::Linf: return detail::sup_metric(d);
    case SpaceTag::CapLp: return detail::cap_lp_metric(d, y.param, budget, prec);
    case SpaceTag::HD: return detail::hd_metric(d, budget, prec);
    case SpaceTag::CN0: return detail::cn0_metric(d, budget, prec);
    case SpaceTag::Ainf: return detail::ainf_metric(d, budget, prec);
  }
  throw Error(ErrorCode::Internal, "unhandled space");
}

inline MetricBound norm_bound(const SpaceId& y, const Sequence& a, std::uint64_t budget, unsigned prec) {
  return metric_bound(y, a, zero_sequence(), budget, prec);
}

inline constexpr unsigned kBallScaleCap = 200;

/// c = 2^(-m) for the least m ≥ 0 with d_Y(c·y, 0) < r.
inline Rational ball_scale(const SpaceId& y, const Sequence& seq, const Rational& r, std::uint64_t budget,
                           unsigned prec) {
  if (r <= 0) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  for (unsigned m = 0; m <= kBallScaleCap; ++m) {
    const Rational c = two_pow(-static_cast<long>(m));
    if (norm_bound(y, scale(ComplexRational(c), seq), budget, prec).upper < r) return c;
  }
  throw Error(ErrorCode::BudgetExceeded, "no scale 2^-m with m ≤ " + std::to_string(kBallScaleCap) + " fits the ball");
}

}  // namespace seqchain
