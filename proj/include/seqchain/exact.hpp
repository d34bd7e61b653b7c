#pragma once

// Exact representation of term values of the form  c · M^(1/v)  with c a
// Gaussian rational and M^(1/v) a real radical. Every witness value used by
// the library (√(1/s), 2^(-j/a), (n+1)^(-2/(a+b)), n^n, ...) has this shape,
// so sums of terms sharing one radical stay exact and coefficient recovery
// by division is exact.

#include <optional>
#include <utility>

#include "seqchain/interval.hpp"

namespace seqchain {

/// M^(1/root) with M ≥ 1 an integer; the trivial radical is 1^(1/1).
struct Radical {
  Integer base{1};
  unsigned long root = 1;

  bool is_one() const { return root == 1; }

  /// [y, y+1]·2^(-bits) with y = ⌊M^(1/root)·2^bits⌋. Nested in `bits`.
  Interval enclosure(unsigned bits) const {
    if (is_one()) return Interval::point(Rational(base));
    Integer scaled = base;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(bits) * root);
    Integer y;
    mpz_root(y.get_mpz_t(), scaled.get_mpz_t(), root);
    const Rational scale = two_pow(-static_cast<long>(bits));
    return {Rational(Rational(y) * scale), Rational(Rational(y + 1) * scale)};
  }

  friend bool operator==(const Radical&, const Radical&) = default;
};

/// Splits x^e (x > 0) into an exact rational factor times a canonical radical.
inline std::pair<Rational, Radical> normalize_power(const Rational& x, const Rational& e) {
  if (x <= 0) throw Error(ErrorCode::InvalidArgument, "normalize_power needs a positive base");
  const Integer& u = e.get_num();
  const Integer& v = e.get_den();
  if (!v.fits_ulong_p() || !u.fits_slong_p())
    throw Error(ErrorCode::InvalidArgument, "exponent out of range");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  const Integer r = u - q * v;
  Rational factor = pow(x, q.get_si());
  if (r == 0) return {factor, Radical{}};
  const unsigned long root = v.get_ui();
  // B = x^r = N/D;  B^(1/v) = (N·D^(v-1))^(1/v) / D.
  const Rational b = pow(x, r.get_si());
  Integer m = b.get_num() * ipow(b.get_den(), root - 1);
  factor /= Rational(b.get_den());
  Integer exact_root;
  if (mpz_root(exact_root.get_mpz_t(), m.get_mpz_t(), root) != 0) {
    factor *= Rational(exact_root);
    return {factor, Radical{}};
  }
  return {factor, Radical{m, root}};
}

/// ρ with a = ρ·b when the quotient of two radicals is rational.
inline std::optional<Rational> radical_ratio(const Radical& a, const Radical& b) {
  if (a == b) return Rational(1);
  Integer l;
  mpz_lcm_ui(l.get_mpz_t(), Integer(static_cast<unsigned long>(a.root)).get_mpz_t(), b.root);
  const unsigned long lv = l.get_ui();
  if (lv > 4096) return std::nullopt;
  const Integer na = ipow(a.base, lv / a.root);
  const Integer nb = ipow(b.base, lv / b.root);
  Integer num, den;
  const Rational q = make_rational(na, nb);
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), lv) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), lv) == 0) return std::nullopt;
  return make_rational(num, den);
}

struct ExactTerm {
  ComplexRational coeff;
  Radical radical;

  static ExactTerm zero() { return {}; }
  static ExactTerm rational(const ComplexRational& z) { return {z, Radical{}}; }
  /// x^e as an exact term (x ≥ 0).
  static ExactTerm power(const Rational& x, const Rational& e) {
    if (x == 0) {
      if (e <= 0) throw Error(ErrorCode::InvalidArgument, "zero to a non-positive power");
      return zero();
    }
    auto [f, rad] = normalize_power(x, e);
    if (rad.is_one()) return rational(ComplexRational(f));
    return {ComplexRational(f), rad};
  }

  bool is_zero() const { return coeff.is_zero(); }
  bool is_rational() const { return radical.is_one() || is_zero(); }

  /// |value| as an exact power product.
  PowerProduct magnitude() const {
    if (is_zero()) return PowerProduct(Rational(0));
    PowerProduct p;
    if (coeff.im == 0) p.times(abs(coeff.re), Rational(1));
    else if (coeff.re == 0) p.times(abs(coeff.im), Rational(1));
    else p.times(coeff.abs2(), Rational(1, 2));
    if (!radical.is_one()) p.times(Rational(radical.base), Rational(1, static_cast<long>(radical.root)));
    return p;
  }

  /// Enclosure of width ≤ 2^(-prec); nested in prec.
  ComplexInterval enclosure(unsigned prec) const {
    if (is_rational()) return ComplexInterval::point(is_zero() ? ComplexRational{} : coeff);
    const unsigned extra = magnitude_bits(Rational(abs(coeff.re) + abs(coeff.im))) + 1;
    const Interval r = radical.enclosure(prec + extra);
    return {coeff.re * r, coeff.im * r};
  }

  friend bool operator==(const ExactTerm& a, const ExactTerm& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.radical == b.radical) return a.coeff == b.coeff;
    auto r = radical_ratio(a.radical, b.radical);
    return r && a.coeff * ComplexRational(*r) == b.coeff;
  }
};

inline ExactTerm operator*(const ComplexRational& c, const ExactTerm& t) {
  if (c.is_zero() || t.is_zero()) return ExactTerm::zero();
  return {c * t.coeff, t.radical};
}

/// Exact sum when the radicals have a rational ratio (or one term is zero).
inline std::optional<ExactTerm> try_add(const ExactTerm& a, const ExactTerm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto r = radical_ratio(b.radical, a.radical);
  if (!r) return std::nullopt;
  ExactTerm s{a.coeff + b.coeff * ComplexRational(*r), a.radical};
  if (s.coeff.is_zero()) return ExactTerm::zero();
  return s;
}

/// Exact quotient a/b when the radicals have a rational ratio and b ≠ 0.
inline std::optional<ComplexRational> try_divide(const ExactTerm& a, const ExactTerm& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return ComplexRational{};
  auto r = radical_ratio(a.radical, b.radical);
  if (!r) return std::nullopt;
  return a.coeff * ComplexRational(*r) / b.coeff;
}

}  // namespace seqchain
