#pragma once

// Exact rationals (GMP) plus directed-rounding bounds (MPFR) for the few
// transcendental operations the library needs: rational powers, roots and
// geometric-series denominators. Every bound returned here is a rational
// number that provably lies on the requested side of the true value.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqchain/errors.hpp"

namespace seqchain {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Round { Down, Up };

/// Default number of significant bits kept when a bound is rounded.
inline constexpr unsigned kGuardBits = 32;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Parses "num/den", "num" or "-num/den". Throws ParseError.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find('-') != std::string::npos)
    throw Error(ErrorCode::ParseError, "malformed rational '" + s + "'");
  Integer n(strip_plus(num), 10);
  Integer d(strip_plus(den), 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  return make_rational(n, d);
}

/// Always "num/den", so that serialized values never drift through floats.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational from_u64(std::uint64_t n) { return Rational(Integer(static_cast<unsigned long>(n))); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational abs(const Rational& q) {
  Rational r = q;
  if (r < 0) r = -r;
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Exact integer power; negative exponents invert.
inline Rational pow(const Rational& x, long e) {
  if (e == 0) return Rational(1);
  const unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer n = ipow(x.get_num(), m);
  Integer d = ipow(x.get_den(), m);
  if (e < 0) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
    std::swap(n, d);
  }
  return make_rational(n, d);
}

inline Rational two_pow(long e) { return pow(Rational(2), e); }

inline Rational floor(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

inline Integer ceil_int(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

/// Bits needed to cover |q| from above: smallest b ≥ 0 with |q| ≤ 2^b.
inline unsigned magnitude_bits(const Rational& q) {
  const Integer c = ceil_int(abs(q));
  if (c <= 1) return 0;
  Integer m = c - 1;
  return static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

inline unsigned floor_log2(std::uint64_t n) {
  unsigned r = 0;
  while (n >>= 1) ++r;
  return r;
}

/// 2-adic valuation; n must be nonzero.
inline unsigned valuation2(std::uint64_t n) {
  unsigned r = 0;
  while ((n & 1u) == 0) {
    n >>= 1;
    ++r;
  }
  return r;
}

namespace detail {

class MpfrValue {
 public:
  explicit MpfrValue(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

inline mpfr_rnd_t mode(Round dir) { return dir == Round::Up ? MPFR_RNDU : MPFR_RNDD; }
inline Round flip(Round dir) { return dir == Round::Up ? Round::Down : Round::Up; }

}  // namespace detail

/// Rounds q to a binary float of `bits` significant bits in direction `dir`.
inline Rational round_bound(const Rational& q, Round dir, unsigned bits) {
  detail::MpfrValue v(bits);
  mpfr_set_q(v.get(), q.get_mpq_t(), detail::mode(dir));
  return v.to_rational();
}

/// Directed bound on x^e for x ≥ 0 and rational e.
inline Rational pow_bound(const Rational& x, const Rational& e, Round dir, unsigned bits) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "pow_bound of a negative base");
  if (e == 0) return Rational(1);
  if (x == 0) {
    if (e > 0) return Rational(0);
    throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
  }
  if (x == 1) return Rational(1);
  if (is_integer(e) && abs(e) <= 64) {
    return round_bound(pow(x, e.get_num().get_si()), dir, bits);
  }
  const unsigned work = bits + 8;
  const bool increasing_in_x = e > 0;
  detail::MpfrValue base(work);
  mpfr_set_q(base.get(), x.get_mpq_t(),
             detail::mode(increasing_in_x ? dir : detail::flip(dir)));
  const bool increasing_in_e = mpfr_cmp_ui(base.get(), 1) >= 0;
  detail::MpfrValue expo(work);
  mpfr_set_q(expo.get(), e.get_mpq_t(),
             detail::mode(increasing_in_e ? dir : detail::flip(dir)));
  detail::MpfrValue out(bits);
  mpfr_pow(out.get(), base.get(), expo.get(), detail::mode(dir));
  return out.to_rational();
}

inline Rational sqrt_bound(const Rational& x, Round dir, unsigned bits) {
  return pow_bound(x, Rational(1, 2), dir, bits);
}

/// Directed bound on a/b for b > 0 (a, b exact).
inline Rational div_bound(const Rational& a, const Rational& b, Round dir, unsigned bits) {
  if (b <= 0) throw Error(ErrorCode::InvalidArgument, "div_bound needs a positive divisor");
  return round_bound(Rational(a / b), dir, bits);
}

/// A product Π base_i^exponent_i of nonnegative rationals raised to rational
/// exponents. Comparisons between products are decided exactly by raising
/// both sides to the common denominator of all exponents.
class PowerProduct {
 public:
  struct Factor {
    Rational base;
    Rational exponent;
  };

  PowerProduct() = default;
  explicit PowerProduct(const Rational& value) { times(value, Rational(1)); }

  PowerProduct& times(const Rational& base, const Rational& exponent) {
    if (base < 0) throw Error(ErrorCode::InvalidArgument, "PowerProduct needs nonnegative bases");
    if (exponent != 0 && base != 1) factors_.push_back({base, exponent});
    return *this;
  }

  PowerProduct& times(const PowerProduct& other) {
    for (const auto& f : other.factors_) times(f.base, f.exponent);
    return *this;
  }

  PowerProduct raised(const Rational& e) const {
    PowerProduct r;
    for (const auto& f : factors_) r.times(f.base, Rational(f.exponent * e));
    return r;
  }

  const std::vector<Factor>& factors() const { return factors_; }

  bool is_zero() const {
    for (const auto& f : factors_)
      if (f.base == 0) return true;
    return false;
  }

  /// The value when it is rational. Fractional exponents are cleared by raising
  /// to their common denominator and taking an exact integer root.
  std::optional<Rational> exact() const {
    if (is_zero()) return Rational(0);
    const Integer l = denominator_lcm();
    if (!l.fits_ulong_p() || l > 4096) return std::nullopt;
    Rational r(1);
    for (const auto& f : factors_) {
      const Rational e = f.exponent * Rational(l);
      if (!e.get_num().fits_slong_p() || abs(e) > Rational(1 << 20)) return std::nullopt;
      r *= pow(f.base, e.get_num().get_si());
    }
    if (l == 1) return r;
    Integer num, den;
    if (mpz_root(num.get_mpz_t(), r.get_num_mpz_t(), l.get_ui()) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), r.get_den_mpz_t(), l.get_ui()) == 0) return std::nullopt;
    return make_rational(num, den);
  }

  Rational bound(Round dir, unsigned bits) const {
    if (is_zero()) return Rational(0);
    if (auto e = exact()) return round_bound(*e, dir, bits);
    Rational r(1);
    for (const auto& f : factors_) r *= pow_bound(f.base, f.exponent, dir, bits + 8);
    return round_bound(r, dir, bits);
  }

  /// Exact value raised to the integer power `scale` (scale must clear every
  /// exponent denominator).
  Rational integral_power(const Integer& scale) const {
    Rational r(1);
    for (const auto& f : factors_) {
      Rational e = f.exponent * Rational(scale);
      if (!is_integer(e) || !e.get_num().fits_slong_p())
        throw Error(ErrorCode::Internal, "exponent out of range in PowerProduct");
      r *= pow(f.base, e.get_num().get_si());
    }
    return r;
  }

  Integer denominator_lcm() const {
    Integer l(1);
    for (const auto& f : factors_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), f.exponent.get_den_mpz_t());
    return l;
  }

 private:
  std::vector<Factor> factors_;
};

inline std::strong_ordering compare(const PowerProduct& a, const PowerProduct& b) {
  const bool az = a.is_zero();
  const bool bz = b.is_zero();
  if (az || bz) {
    if (az && bz) return std::strong_ordering::equal;
    return az ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.denominator_lcm().get_mpz_t(), b.denominator_lcm().get_mpz_t());
  const Rational lhs = a.integral_power(l);
  const Rational rhs = b.integral_power(l);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace seqchain
