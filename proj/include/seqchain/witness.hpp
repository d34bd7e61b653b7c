#pragma once

// Separating sequences for every strict pair X ⊊ Y of the chain, supported in
// a prescribed infinite index set and shipped with both certificates.

#include "seqchain/diagnose.hpp"
#include "seqchain/spec_io.hpp"

namespace seqchain {

struct Witness {
  Sequence seq;
  SpaceId inner;
  SpaceId outer;
  OutCert out_cert;
  InCert in_cert;
  SupportSet support;
};

/// The next space up when only X is known. Without a second tower parameter,
/// ∩_{q>c}ℓ^q steps straight to c0.
inline SpaceId successor(const SpaceId& x) {
  switch (x.tag) {
    case SpaceTag::Ainf: return SpaceId::cap_lp(Rational(0));
    case SpaceTag::Lp: return SpaceId::cap_lp(x.param);
    case SpaceTag::CapLp: return SpaceId::c0();
    case SpaceTag::C0: return SpaceId::linf();
    case SpaceTag::Linf: return SpaceId::hd();
    case SpaceTag::HD: return SpaceId::cn0();
    case SpaceTag::CN0: break;
  }
  throw Error(ErrorCode::TopOfChain, "C^N0 is the top of the chain");
}

/// Gap sequence for X ⊊ Y on the full index set; rearrangement-invariant X only.
inline Sequence gap_for_pair(const SpaceId& x, const SpaceId& y) {
  switch (x.tag) {
    case SpaceTag::Ainf: return prop28();
    case SpaceTag::Lp: return gap_lp_cap(x.param);
    case SpaceTag::CapLp:
      if (y.is_tower() && y.param > x.param) return gap_cap_lp(x.param, y.param);
      return gap_cap_c0(Rational(floor(x.param) + 1));
    case SpaceTag::C0: return const_one();
    case SpaceTag::Linf: return nat();
    case SpaceTag::HD: return nat_power();
    case SpaceTag::CN0: break;
  }
  throw Error(ErrorCode::TopOfChain, "C^N0 is the top of the chain");
}

inline Sequence canonical_gap_sequence(const SpaceId& x) { return gap_for_pair(x, successor(x)); }

inline std::string support_kind(const SupportSet& a) {
  try {
    return a.to_spec().value("kind", "");
  } catch (const Error&) {
    return "custom";
  }
}

/// The witness sequence for (X, Y) supported in A, before certification.
inline Sequence witness_sequence(const SpaceId& x, const SpaceId& y, const SupportSet& a) {
  if (!strictly_included(x, y))
    throw Error(ErrorCode::NotStrictPair, to_string(x) + " is not strictly included in " + to_string(y));
  if (a.is_finite()) throw Error(ErrorCode::FiniteSupportSet, "witness support must be infinite");
  switch (x.tag) {
    case SpaceTag::Ainf:
      if (support_kind(a) == "powers-of-two") return prop28();
      return rem29(a);
    case SpaceTag::HD: return nn_on_support(a);
    default: break;
  }
  const Sequence gap = gap_for_pair(x, y);
  if (support_kind(a) == "all") return gap;
  return spread(gap, a);
}

inline Witness make_witness(const SpaceId& x, const SpaceId& y, const SupportSet& a, std::uint64_t budget,
                            unsigned prec = 64) {
  Sequence s = witness_sequence(x, y, a);
  auto out = find_out(s, x, budget, prec);
  if (!out) throw Error(ErrorCode::BudgetExceeded, "no out-certificate for " + to_string(x) + " within the budget");
  auto in = find_in(s, y, budget, prec);
  if (!in) throw Error(ErrorCode::BudgetExceeded, "no in-certificate for " + to_string(y) + " within the budget");
  return {std::move(s), x, y, std::move(*out), std::move(*in), a};
}

/// Terms off the support are exactly zero for every n ≤ budget.
inline bool supported_in(const Sequence& s, const SupportSet& a, std::uint64_t budget, unsigned prec) {
  std::uint64_t last = budget;
  if (auto end = s.support_end()) {
    if (*end == 0) return true;
    last = std::min(last, *end - 1);
  }
  for (std::uint64_t n = 0; n <= last; ++n) {
    if (a.member(n)) continue;
    if (auto e = s.exact_term(n)) {
      if (!e->is_zero()) return false;
    } else if (!s.term_at(n, prec).is_exact_zero()) {
      return false;
    }
  }
  return true;
}

inline bool verify_witness(const Witness& w, std::uint64_t budget, unsigned samples, unsigned prec) {
  try {
    if (!strictly_included(w.inner, w.outer)) return false;
    if (!(w.out_cert.space == w.inner) || !(w.in_cert.space == w.outer)) return false;
    if (!supported_in(w.seq, w.support, budget, prec)) return false;
    if (!check_certificate(w.seq, Verdict::certified_out(w.out_cert, budget), samples, prec)) return false;
    return check_certificate(w.seq, Verdict::certified_in(w.in_cert, budget), samples, prec);
  } catch (const Error&) {
    return false;
  }
}

inline Json to_json(const Witness& w) {
  return {{"inner", to_string(w.inner)},
          {"outer", to_string(w.outer)},
          {"sequence", w.seq.to_spec()},
          {"support", w.support.to_spec()},
          {"out_certificate", to_json(w.out_cert)},
          {"in_certificate", to_json(w.in_cert)}};
}

}  // namespace seqchain
