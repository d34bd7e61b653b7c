#pragma once

// Algebraic genericity: a dense family f_j = x_j + c_j y_j in Y whose nonzero
// finite combinations all leave X, certified by restricting a combination to
// one support block beyond the heads of the x_j.

#include <optional>
#include <vector>

#include "seqchain/witness.hpp"

namespace seqchain {

inline constexpr std::uint64_t kIdentityChecks = 50;

/// A_j = {n : the 2-adic valuation of n+1 is j-1}; these partition N0.
inline SupportSet disjoint_support(std::uint64_t j) {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "support blocks are numbered from 1");
  return SupportSet::dyadic_row(j);
}

// ---------------------------------------------------------------------------
// Enumeration of the Gaussian-rational finitely supported sequences

namespace detail {

/// Calkin–Wilf: m ≥ 1 ↦ positive rational (breadth-first order of the tree).
inline Rational calkin_wilf(const Integer& m) {
  Integer a(1), b(1);
  const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (mpz_tstbit(m.get_mpz_t(), i)) a += b;
    else b += a;
  }
  return make_rational(a, b);
}

inline Integer calkin_wilf_index(const Rational& q) {
  Integer a = q.get_num(), b = q.get_den();
  std::vector<bool> path;
  while (a != b) {
    if (a > b) {
      path.push_back(true);
      a -= b;
    } else {
      path.push_back(false);
      b -= a;
    }
  }
  Integer m(1);
  for (auto it = path.rbegin(); it != path.rend(); ++it) m = 2 * m + (*it ? 1 : 0);
  return m;
}

/// N0 ↔ Q: 0 ↦ 0, 2m-1 ↦ cw(m), 2m ↦ -cw(m).
inline Rational rational_of(const Integer& k) {
  if (k == 0) return Rational(0);
  const Integer m = (k + 1) / 2;
  const Rational q = calkin_wilf(m);
  return (k % 2 == 1) ? q : Rational(-q);
}

inline Integer index_of(const Rational& q) {
  if (q == 0) return Integer(0);
  const Integer m = calkin_wilf_index(abs(q));
  return q > 0 ? Integer(2 * m - 1) : Integer(2 * m);
}

/// Cantor pairing N0² ↔ N0.
inline Integer cantor_pair(const Integer& a, const Integer& b) { return (a + b) * (a + b + 1) / 2 + b; }

inline std::pair<Integer, Integer> cantor_unpair(const Integer& k) {
  Integer w;
  Integer t = 8 * k + 1;
  mpz_sqrt(w.get_mpz_t(), t.get_mpz_t());
  w = (w - 1) / 2;
  const Integer b = k - w * (w + 1) / 2;
  return {w - b, b};
}

inline ComplexRational gaussian_of(const Integer& k) {
  auto [a, b] = cantor_unpair(k);
  return {rational_of(a), rational_of(b)};
}

inline Integer gaussian_index(const ComplexRational& z) { return cantor_pair(index_of(z.re), index_of(z.im)); }

}  // namespace detail

/// j = 1 is the zero sequence. Otherwise j - 1 = F(g_0, …, g_L - 1) where
/// F(g :: rest) = 2^g (2 F(rest) + 1), F([]) = 0, and g_n indexes a_n.
inline Sequence enumerate_rational_c00(std::uint64_t j) {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "the enumeration starts at j = 1");
  std::uint64_t n = j - 1;
  std::vector<std::uint64_t> codes;
  while (n != 0) {
    const unsigned e = valuation2(n);
    codes.push_back(e);
    n = ((n >> e) - 1) / 2;
  }
  std::map<std::uint64_t, ComplexRational> entries;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::uint64_t g = codes[i] + (i + 1 == codes.size() ? 1 : 0);
    const ComplexRational z = detail::gaussian_of(Integer(static_cast<unsigned long>(g)));
    if (!z.is_zero()) entries.emplace(i, z);
  }
  return finite_sequence(std::move(entries));
}

/// Inverse of enumerate_rational_c00 on finite rational sequences; nullopt when
/// the index does not fit in 64 bits.
inline std::optional<std::uint64_t> encode_rational_c00(const Sequence& s) {
  auto end = s.support_end();
  if (!end) throw Error(ErrorCode::InvalidArgument, "only finitely supported sequences are enumerated");
  if (*end == 0) return 1;
  std::vector<Integer> g;
  for (std::uint64_t n = 0; n < *end; ++n) {
    auto e = s.exact_term(n);
    if (!e || !e->is_rational()) throw Error(ErrorCode::InvalidArgument, "entries must be Gaussian rationals");
    g.push_back(detail::gaussian_index(e->coeff));
  }
  g.back() -= 1;
  Integer f(0);
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    if (!it->fits_ulong_p() || *it > 64) return std::nullopt;
    f = 2 * f + 1;
    mpz_mul_2exp(f.get_mpz_t(), f.get_mpz_t(), it->get_ui());
    if (mpz_sizeinbase(f.get_mpz_t(), 2) > 64) return std::nullopt;
  }
  f += 1;
  if (!f.fits_ulong_p()) return std::nullopt;
  return static_cast<std::uint64_t>(f.get_ui());
}

// ---------------------------------------------------------------------------
// Dense family

struct DenseFamilyElement {
  std::uint64_t j = 1;
  SpaceId outer;
  SpaceId inner;
  Sequence x;
  Witness y;
  Rational c;
  Sequence f;
};

inline DenseFamilyElement dense_family_element(std::uint64_t j, const SpaceId& y_space, const SpaceId& x_space,
                                               std::uint64_t budget, unsigned prec) {
  if (y_space.tag == SpaceTag::Linf)
    throw Error(ErrorCode::UnsupportedOuter, "ℓ^∞ is not separable; no dense family is built for it");
  if (!strictly_included(x_space, y_space))
    throw Error(ErrorCode::NotStrictPair, to_string(x_space) + " is not strictly included in " + to_string(y_space));
  Sequence x = enumerate_rational_c00(j);
  Witness w = make_witness(x_space, y_space, disjoint_support(j), budget, prec);
  const Rational c = ball_scale(y_space, w.seq, make_rational(1, static_cast<long>(j)), budget, prec);
  Sequence f = combine({ComplexRational(Rational(1)), ComplexRational(c)}, {x, w.seq});
  return {j, y_space, x_space, std::move(x), std::move(w), c, std::move(f)};
}

/// d_Y(f_j, x_j) < 1/j, recomputed.
inline bool check_ball(const DenseFamilyElement& e, std::uint64_t budget, unsigned prec) {
  return metric_bound(e.outer, e.f, e.x, budget, prec).upper < make_rational(1, static_cast<long>(e.j));
}

// ---------------------------------------------------------------------------
// Restriction certificate

/// Beyond N every x_j vanishes, so on A_{j0} ∩ [N, ∞) the combination equals
/// scale · y_{j0}, which is not in X by the inherited certificate.
struct OutsideXCertificate {
  std::uint64_t j0 = 1;
  std::uint64_t N = 0;
  ComplexRational scale;
  SupportSet support;
  std::vector<std::uint64_t> checked;
  OutCert inherited;
  Witness witness;
};

namespace detail {

/// combination(n) = scale · y(n) at each n, exactly when both sides are exact.
inline bool identity_holds(const Sequence& combination, const ComplexRational& scale, const Sequence& y,
                           const std::vector<std::uint64_t>& points, unsigned prec) {
  for (std::uint64_t n : points) {
    auto lhs = combination.exact_term(n);
    auto rhs = y.exact_term(n);
    if (lhs && rhs) {
      if (!(*lhs == scale * *rhs)) return false;
      continue;
    }
    const ComplexInterval l = combination.term_at(n, prec);
    const ComplexInterval r = scale * y.term_at(n, prec);
    if (!l.overlaps(r)) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> block_points(const SupportSet& a, std::uint64_t from, std::uint64_t count) {
  std::vector<std::uint64_t> out;
  auto first = a.first_at_least(from);
  if (!first) return out;
  for (std::uint64_t k = first->first; out.size() < count; ++k) {
    if (a.is_finite() && k > a.size()) break;
    out.push_back(a.nth(k));
  }
  return out;
}

inline OutsideXCertificate build_outside(const Sequence& combination, std::uint64_t j0, std::uint64_t N,
                                         const ComplexRational& scale, const Witness& w, std::uint64_t checks,
                                         unsigned prec) {
  OutCert inherited = w.out_cert;
  inherited.scale = scale;
  OutsideXCertificate cert{j0, N, scale, w.support, block_points(w.support, N, checks), std::move(inherited), w};
  if (!identity_holds(combination, scale, w.seq, cert.checked, prec))
    throw Error(ErrorCode::Internal, "restriction identity failed");
  return cert;
}

}  // namespace detail

/// Re-checks the identity on the recorded points, that the scale is nonzero,
/// and the inherited out-certificate on y_{j0}.
inline bool check_outside(const Sequence& combination, const OutsideXCertificate& c, unsigned prec) {
  if (c.scale.is_zero() || c.checked.empty()) return false;
  for (std::uint64_t n : c.checked)
    if (n < c.N || !c.support.member(n)) return false;
  if (!detail::identity_holds(combination, c.scale, c.witness.seq, c.checked, prec)) return false;
  if (!supported_in(c.witness.seq, c.support, c.checked.back(), prec)) return false;
  OutCert unscaled = c.inherited;
  unscaled.scale = ComplexRational(Rational(1));
  return check_out(c.witness.seq, unscaled, prec);
}

inline Sequence combination_of(const std::vector<ComplexRational>& t, const std::vector<DenseFamilyElement>& elems) {
  if (t.size() != elems.size()) throw Error(ErrorCode::LengthMismatch, "one coefficient per element");
  std::vector<Sequence> fs;
  for (const auto& e : elems) fs.push_back(e.f);
  return combine(t, fs);
}

inline OutsideXCertificate certify_outside(const std::vector<ComplexRational>& t,
                                           const std::vector<DenseFamilyElement>& elems, std::uint64_t budget,
                                           unsigned prec, std::uint64_t checks = kIdentityChecks) {
  const Sequence g = combination_of(t, elems);
  std::size_t i0 = t.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) {
      i0 = i;
      break;
    }
  if (i0 == t.size()) throw Error(ErrorCode::AllZeroCoefficients, "every coefficient is zero");
  std::uint64_t N = 0;
  for (const auto& e : elems) {
    auto end = e.x.support_end();
    if (!end) throw Error(ErrorCode::Internal, "x_j must be finitely supported");
    N = std::max(N, *end);
  }
  const auto& e = elems[i0];
  return detail::build_outside(g, e.j, N, t[i0] * ComplexRational(e.c), e.y, std::min(checks, std::max<std::uint64_t>(budget, 1)), prec);
}

// ---------------------------------------------------------------------------
// Approximation by an element outside X

struct Approximation {
  Sequence f;
  Sequence x;
  Rational c;
  Rational distance_upper;
  OutsideXCertificate certificate;
};

namespace detail {

/// A finitely supported Gaussian-rational x with d_Y(target, x) < bound.
inline Sequence rational_truncation(const Sequence& target, const SpaceId& y, const Rational& bound,
                                    std::uint64_t budget, unsigned prec) {
  if (auto end = target.support_end()) {
    std::map<std::uint64_t, ComplexRational> entries;
    bool exact = true;
    for (std::uint64_t n = 0; n < *end && exact; ++n) {
      auto e = target.exact_term(n);
      if (!e || !e->is_rational()) exact = false;
      else if (!e->is_zero()) entries.emplace(n, e->coeff);
    }
    if (exact) return finite_sequence(std::move(entries));
  }
  const unsigned digits = std::max(prec, magnitude_bits(Rational(1 / bound)) + 8);
  for (std::uint64_t len = 1; len <= budget + 1; len *= 2) {
    std::map<std::uint64_t, ComplexRational> entries;
    for (std::uint64_t n = 0; n < len; ++n) {
      const ComplexRational z = target.term_at(n, digits).center();
      const ComplexRational r{round_bound(z.re, Round::Down, digits), round_bound(z.im, Round::Down, digits)};
      if (!r.is_zero()) entries.emplace(n, r);
    }
    Sequence x = finite_sequence(std::move(entries));
    if (metric_bound(y, target, x, budget, prec).upper < bound) return x;
  }
  throw Error(ErrorCode::BudgetExceeded, "no truncation within the budget is close enough");
}

}  // namespace detail

inline Approximation approximate_with_avoider(const Sequence& target, const Rational& eps, const SpaceId& y_space,
                                              const SpaceId& x_space, std::uint64_t budget, unsigned prec,
                                              std::uint64_t checks = kIdentityChecks) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!strictly_included(x_space, y_space))
    throw Error(ErrorCode::NotStrictPair, to_string(x_space) + " is not strictly included in " + to_string(y_space));
  const Rational half = eps / 2;
  Sequence x = detail::rational_truncation(target, y_space, half, budget, prec);
  Witness w = make_witness(x_space, y_space, SupportSet::all(), budget, prec);
  const Rational c = ball_scale(y_space, w.seq, half, budget, prec);
  Sequence f = combine({ComplexRational(Rational(1)), ComplexRational(c)}, {x, w.seq});
  const Rational direct = metric_bound(y_space, f, target, budget, prec).upper;
  const Rational triangle = metric_bound(y_space, target, x, budget, prec).upper +
                            norm_bound(y_space, scale(ComplexRational(c), w.seq), budget, prec).upper;
  const Rational dist = std::min(direct, triangle);
  if (dist >= eps) throw Error(ErrorCode::BudgetExceeded, "distance bound did not fall below epsilon");
  const std::uint64_t N = *x.support_end();
  OutsideXCertificate cert = detail::build_outside(f, 1, N, ComplexRational(c), w,
                                                   std::min(checks, std::max<std::uint64_t>(budget, 1)), prec);
  return {std::move(f), std::move(x), c, dist, std::move(cert)};
}

inline Json to_json(const OutsideXCertificate& c) {
  return {{"j0", c.j0},
          {"N", c.N},
          {"scale", {to_string(c.scale.re), to_string(c.scale.im)}},
          {"support", c.support.to_spec()},
          {"checked", c.checked},
          {"inherited", to_json(c.inherited)},
          {"witness", c.witness.seq.to_spec()}};
}

}  // namespace seqchain
