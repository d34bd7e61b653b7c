#pragma once

#include <algorithm>
#include <array>

#include "seqchain/rational.hpp"

namespace seqchain {

/// Closed real interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& q) { return {q, q}; }

  Rational width() const { return Rational(hi - lo); }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool excludes_zero() const { return lo > 0 || hi < 0; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  Rational midpoint() const { return Rational((lo + hi) / 2); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval operator-(const Interval& a) { return {Rational(-a.hi), Rational(-a.lo)}; }
inline Interval operator+(const Interval& a, const Interval& b) {
  return {Rational(a.lo + b.lo), Rational(a.hi + b.hi)};
}
inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_point() && b.is_point()) return Interval::point(Rational(a.lo * b.lo));
  const std::array<Rational, 4> p = {Rational(a.lo * b.lo), Rational(a.lo * b.hi),
                                     Rational(a.hi * b.lo), Rational(a.hi * b.hi)};
  return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

inline Interval operator*(const Rational& c, const Interval& a) {
  if (c >= 0) return {Rational(c * a.lo), Rational(c * a.hi)};
  return {Rational(c * a.hi), Rational(c * a.lo)};
}

/// Division by an interval that excludes zero.
inline Interval operator/(const Interval& a, const Interval& b) {
  if (!b.excludes_zero()) throw Error(ErrorCode::InvalidArgument, "interval division by zero");
  if (a.is_point() && b.is_point()) return Interval::point(Rational(a.lo / b.lo));
  const std::array<Rational, 4> p = {Rational(a.lo / b.lo), Rational(a.lo / b.hi),
                                     Rational(a.hi / b.lo), Rational(a.hi / b.hi)};
  return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

inline Interval square(const Interval& a) {
  if (a.is_point()) return Interval::point(Rational(a.lo * a.lo));
  const Rational l2 = a.lo * a.lo;
  const Rational h2 = a.hi * a.hi;
  if (a.lo >= 0) return {l2, h2};
  if (a.hi <= 0) return {h2, l2};
  return {Rational(0), std::max(l2, h2)};
}

/// Exact Gaussian rational re + i·im.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(const Rational& r) : re(r), im(0) {}  // NOLINT: implicit from real
  ComplexRational(const Rational& r, const Rational& i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Rational abs2() const { return Rational(re * re + im * im); }
  ComplexRational conj() const { return {re, Rational(-im)}; }

  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

inline ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
  return {Rational(a.re + b.re), Rational(a.im + b.im)};
}
inline ComplexRational operator-(const ComplexRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
inline ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) { return a + (-b); }
inline ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
}
inline ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  const Rational d = b.abs2();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "complex division by zero");
  const ComplexRational n = a * b.conj();
  return {Rational(n.re / d), Rational(n.im / d)};
}

/// Axis-aligned box in the complex plane; the value interval of a term a_n.
struct ComplexInterval {
  Interval re;
  Interval im;

  static ComplexInterval point(const ComplexRational& z) {
    return {Interval::point(z.re), Interval::point(z.im)};
  }
  static ComplexInterval zero() { return point(ComplexRational{}); }

  bool is_exact() const { return re.is_point() && im.is_point(); }
  ComplexRational center() const { return {re.midpoint(), im.midpoint()}; }
  Rational width() const { return std::max(re.width(), im.width()); }
  bool excludes_zero() const { return re.excludes_zero() || im.excludes_zero(); }
  bool is_exact_zero() const { return is_exact() && re.lo == 0 && im.lo == 0; }
  bool contains(const ComplexInterval& o) const { return re.contains(o.re) && im.contains(o.im); }
  bool overlaps(const ComplexInterval& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }

  friend bool operator==(const ComplexInterval&, const ComplexInterval&) = default;
};

inline ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }
inline ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return a + (-b); }
inline ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexInterval operator*(const ComplexRational& c, const ComplexInterval& a) {
  return {c.re * a.re - c.im * a.im, c.re * a.im + c.im * a.re};
}

/// Range of |z|² over the box.
inline Interval abs2(const ComplexInterval& z) { return square(z.re) + square(z.im); }

inline ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const Interval d = abs2(b);
  if (!d.excludes_zero()) throw Error(ErrorCode::InvalidArgument, "complex interval division by zero");
  const ComplexInterval conj_b{b.re, -b.im};
  const ComplexInterval n = a * conj_b;
  return {n.re / d, n.im / d};
}

/// Rigorous bounds on |z| over the box.
inline Interval abs_bounds(const ComplexInterval& z, unsigned bits) {
  const Interval s = abs2(z);
  return {sqrt_bound(s.lo, Round::Down, bits), sqrt_bound(s.hi, Round::Up, bits)};
}

}  // namespace seqchain
