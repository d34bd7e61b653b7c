#pragma once

// Lazy complex sequences (a_n), n ∈ N0. A Sequence is an immutable handle to a
// node that answers term queries at a requested precision and, where the
// node knows them in closed form, certified tail bounds and growth facts.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqchain/exact.hpp"
#include "seqchain/support.hpp"

namespace seqchain {

/// Exponents p for which Σ|a_n|^p is finite: p > threshold (or ≥ when inclusive).
struct ExponentDomain {
  Rational threshold;
  bool inclusive = false;

  bool contains(const Rational& p) const { return inclusive ? p >= threshold : p > threshold; }
  /// True when every p > q lies in the domain.
  bool contains_all_above(const Rational& q) const { return threshold < q || (threshold == q); }
};

inline std::optional<ExponentDomain> intersect(const std::optional<ExponentDomain>& a,
                                               const std::optional<ExponentDomain>& b) {
  if (!a || !b) return std::nullopt;
  if (a->threshold != b->threshold) return a->threshold > b->threshold ? a : b;
  return ExponentDomain{a->threshold, a->inclusive && b->inclusive};
}

/// Which tail oracles a sequence supports, as declared by its closed form.
struct TailProfile {
  std::optional<ExponentDomain> lp;          // tail_pow finite on this domain
  bool bounded = false;                      // sup_tail finite
  bool vanishing = false;                    // sup_tail(N) → 0
  bool disc = false;                         // disc_tail finite for every r < 1
  std::optional<std::uint64_t> support_end;  // a_n = 0 exactly for n ≥ support_end
};

enum class GrowthKind { SubseqLowerBound, RootLowerBound, PartialSumLowerBound };

/// A closed-form growth fact along a strictly increasing index map s(m), m ≥ first_m:
///   SubseqLowerBound:     s(m)^weight · |a_{s(m)}| ≥ g(m)
///   RootLowerBound:       |a_{s(m)}| ≥ g(m)^{s(m)}
///   PartialSumLowerBound: Σ_{n ≤ s(m)} |a_n|^exponent ≥ g(m)
/// `divergent` records that g(m) → ∞; otherwise g is a positive constant.
struct GrowthTag {
  GrowthKind kind = GrowthKind::SubseqLowerBound;
  std::string label;
  unsigned weight = 0;
  Rational exponent{1};
  bool divergent = true;
  std::uint64_t first_m = 1;
  std::function<std::uint64_t(std::uint64_t)> index;
  std::function<PowerProduct(std::uint64_t)> bound;
};

enum class SequenceKind { FiniteRational, Family, Spread, Restrict, Combine };

/// Bits kept when tail and metric bounds are rounded outward.
inline unsigned bound_bits(unsigned prec) { return prec + kGuardBits; }

class SequenceNode {
 public:
  virtual ~SequenceNode() = default;

  virtual SequenceKind kind() const = 0;
  virtual std::optional<ExactTerm> exact_term(std::uint64_t n) const = 0;

  virtual ComplexInterval term(std::uint64_t n, unsigned prec) const {
    auto e = exact_term(n);
    if (!e) throw Error(ErrorCode::Internal, "node has neither exact nor interval terms");
    return e->enclosure(prec);
  }

  virtual TailProfile profile() const = 0;

  /// Upper bound on Σ_{n > after} |a_n|^p.
  virtual std::optional<Rational> tail_pow(std::int64_t, const Rational&, unsigned) const { return std::nullopt; }
  /// Upper bound on sup_{n > after} |a_n|.
  virtual std::optional<Rational> sup_tail(std::int64_t, unsigned) const { return std::nullopt; }

  /// Upper bound on Σ_{n > after} |a_n| r^n. The default derives it from the
  /// sup tail: Σ_{n>N} S r^n = S r^(N+1) / (1 - r).
  virtual std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const {
    return disc_from_sup(after, r, prec);
  }

  virtual std::vector<GrowthTag> growth_tags() const { return {}; }
  virtual Json to_spec() const = 0;

 protected:
  std::optional<Rational> disc_from_sup(std::int64_t after, const Rational& r, unsigned prec) const {
    if (r <= 0 || r >= 1) throw Error(ErrorCode::InvalidArgument, "disc radius must lie in (0, 1)");
    auto s = sup_tail(after, prec);
    if (!s) return std::nullopt;
    const Rational rn = pow(r, after + 1);
    return round_bound(Rational(*s * rn / (1 - r)), Round::Up, bound_bits(prec));
  }
};

class Sequence {
 public:
  explicit Sequence(std::shared_ptr<const SequenceNode> node) : node_(std::move(node)) {}

  SequenceKind kind() const { return node_->kind(); }
  const SequenceNode& node() const { return *node_; }
  bool same_as(const Sequence& o) const { return node_ == o.node_; }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const {
    if (auto end = support_end(); end && n >= *end) return ExactTerm::zero();
    return node_->exact_term(n);
  }

  /// Value interval of a_n with width ≤ 2^(-prec).
  ComplexInterval term_at(std::uint64_t n, unsigned prec) const {
    if (auto end = support_end(); end && n >= *end) return ComplexInterval::zero();
    return node_->term(n, prec);
  }

  std::optional<std::uint64_t> support_end() const { return node_->profile().support_end; }

  TailProfile profile() const {
    TailProfile p = node_->profile();
    if (p.support_end) {
      p.lp = ExponentDomain{Rational(0), false};
      p.bounded = p.vanishing = p.disc = true;
    }
    return p;
  }

  // Finite supports are summed term by term with the same per-term bounds the
  // metrics use for their heads, and without a final rounding, so head + tail
  // does not depend on where the head stops.
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const {
    if (p <= 0) throw Error(ErrorCode::InvalidArgument, "tail exponent must be positive");
    if (auto end = support_end()) {
      Rational acc(0);
      for (std::uint64_t n = first_after(after); n < *end; ++n) acc += magnitude_pow(n, p, prec).hi;
      return acc;
    }
    return node_->tail_pow(after, p, prec);
  }

  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const {
    if (auto end = support_end()) {
      Rational acc(0);
      for (std::uint64_t n = first_after(after); n < *end; ++n) acc = std::max(acc, magnitude(n, prec).hi);
      return acc;
    }
    return node_->sup_tail(after, prec);
  }

  std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const {
    if (r <= 0 || r >= 1) throw Error(ErrorCode::InvalidArgument, "disc radius must lie in (0, 1)");
    if (auto end = support_end()) {
      Rational acc(0);
      for (std::uint64_t n = first_after(after); n < *end; ++n)
        acc += Rational(magnitude(n, prec).hi * pow(r, static_cast<long>(n)));
      return acc;
    }
    return node_->disc_tail(after, r, prec);
  }

  std::vector<GrowthTag> growth_tags() const { return node_->growth_tags(); }
  Json to_spec() const { return node_->to_spec(); }

  /// Bounds on |a_n|.
  Interval magnitude(std::uint64_t n, unsigned prec) const { return magnitude_pow(n, Rational(1), prec); }

  /// Bounds on |a_n|^p; a point whenever the value is rational.
  Interval magnitude_pow(std::uint64_t n, const Rational& p, unsigned prec) const {
    const unsigned bits = bound_bits(prec);
    if (auto e = exact_term(n)) {
      const PowerProduct m = e->magnitude().raised(p);
      if (auto v = m.exact()) return Interval::point(*v);
      return {m.bound(Round::Down, bits), m.bound(Round::Up, bits)};
    }
    const Interval s = abs2(term_at(n, prec));
    const Rational half = p / 2;
    return {pow_bound(s.lo, half, Round::Down, bits), pow_bound(s.hi, half, Round::Up, bits)};
  }

  /// Upper bound on |a_n|.
  Rational sup_at(std::uint64_t n, unsigned prec) const { return magnitude(n, prec).hi; }

 private:
  static std::uint64_t first_after(std::int64_t after) {
    return static_cast<std::uint64_t>(std::max<std::int64_t>(after + 1, 0));
  }

  std::shared_ptr<const SequenceNode> node_;
};

// ---------------------------------------------------------------------------
// Finite rational sequences

class FiniteNode final : public SequenceNode {
 public:
  explicit FiniteNode(std::map<std::uint64_t, ComplexRational> entries) {
    for (auto& [n, z] : entries)
      if (!z.is_zero()) entries_.emplace(n, z);
  }

  SequenceKind kind() const override { return SequenceKind::FiniteRational; }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    auto it = entries_.find(n);
    if (it == entries_.end()) return ExactTerm::zero();
    return ExactTerm::rational(it->second);
  }

  TailProfile profile() const override {
    TailProfile p;
    p.support_end = entries_.empty() ? 0 : entries_.rbegin()->first + 1;
    return p;
  }

  const std::map<std::uint64_t, ComplexRational>& entries() const { return entries_; }

  Json to_spec() const override {
    Json list = Json::array();
    for (const auto& [n, z] : entries_) list.push_back({n, to_string(z.re), to_string(z.im)});
    return {{"kind", "finite"}, {"entries", list}};
  }

 private:
  std::map<std::uint64_t, ComplexRational> entries_;
};

inline Sequence finite_sequence(std::map<std::uint64_t, ComplexRational> entries) {
  return Sequence(std::make_shared<FiniteNode>(std::move(entries)));
}

inline Sequence zero_sequence() { return finite_sequence({}); }

/// e_n: 1 at index n, 0 elsewhere.
inline Sequence unit_sequence(std::uint64_t n) { return finite_sequence({{n, ComplexRational(Rational(1))}}); }

// ---------------------------------------------------------------------------
// Restriction a·χ_A

class RestrictNode final : public SequenceNode {
 public:
  RestrictNode(Sequence base, SupportSet support) : base_(std::move(base)), support_(std::move(support)) {}

  SequenceKind kind() const override { return SequenceKind::Restrict; }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    if (!support_.member(n)) return ExactTerm::zero();
    return base_.exact_term(n);
  }

  ComplexInterval term(std::uint64_t n, unsigned prec) const override {
    if (!support_.member(n)) return ComplexInterval::zero();
    return base_.term_at(n, prec);
  }

  TailProfile profile() const override {
    TailProfile p = base_.profile();
    if (support_.is_finite()) {
      const std::uint64_t end = support_.size() == 0 ? 0 : support_.nth(support_.size()) + 1;
      p.support_end = p.support_end ? std::min(*p.support_end, end) : end;
    }
    return p;
  }

  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    return base_.tail_pow(after, p, prec);
  }
  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    return base_.sup_tail(after, prec);
  }
  std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const override {
    return base_.disc_tail(after, r, prec);
  }

  Json to_spec() const override {
    return {{"kind", "restrict"}, {"base", base_.to_spec()}, {"support", support_.to_spec()}};
  }

 private:
  Sequence base_;
  SupportSet support_;
};

inline Sequence restrict(const Sequence& seq, const SupportSet& support) {
  return Sequence(std::make_shared<RestrictNode>(seq, support));
}

// ---------------------------------------------------------------------------
// Support spreading: b_{i_k} = a_{k-1} for the k-th element i_k of A (1-based),
// 0 off A. With the identity enumeration of N0 this is the identity map.

class SpreadNode final : public SequenceNode {
 public:
  SpreadNode(Sequence base, SupportSet support) : base_(std::move(base)), support_(std::move(support)) {
    if (support_.is_finite()) throw Error(ErrorCode::FiniteSupportSet, "spread needs an infinite support set");
  }

  SequenceKind kind() const override { return SequenceKind::Spread; }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    if (!support_.member(n)) return ExactTerm::zero();
    return base_.exact_term(source_index(n));
  }

  ComplexInterval term(std::uint64_t n, unsigned prec) const override {
    if (!support_.member(n)) return ComplexInterval::zero();
    return base_.term_at(source_index(n), prec);
  }

  TailProfile profile() const override {
    TailProfile p = base_.profile();
    if (p.support_end) p.support_end = *p.support_end == 0 ? 0 : support_.nth(*p.support_end) + 1;
    return p;
  }

  // Σ_{n>N} |b_n|^p = Σ_{j ≥ K(N)} |a_j|^p with K(N) = |A ∩ [0, N]|.
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    return base_.tail_pow(transported(after), p, prec);
  }
  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    return base_.sup_tail(transported(after), prec);
  }
  // i_k ≥ k - 1, hence r^(i_k) ≤ r^(k-1).
  std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const override {
    auto a = base_.profile().disc ? base_.disc_tail(transported(after), r, prec) : std::nullopt;
    auto b = disc_from_sup(after, r, prec);
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
  }

  std::vector<GrowthTag> growth_tags() const override {
    std::vector<GrowthTag> out;
    for (auto tag : base_.growth_tags()) {
      if (tag.kind == GrowthKind::RootLowerBound) continue;  // positions matter for root growth
      auto inner = tag.index;
      SupportSet a = support_;
      tag.index = [inner, a](std::uint64_t m) { return a.nth(inner(m) + 1); };
      tag.label = "spread(" + tag.label + ")";
      out.push_back(std::move(tag));
    }
    return out;
  }

  Json to_spec() const override {
    return {{"kind", "spread"}, {"base", base_.to_spec()}, {"support", support_.to_spec()}};
  }

 private:
  std::uint64_t source_index(std::uint64_t n) const {
    return support_.count_upto(static_cast<std::int64_t>(n)) - 1;
  }
  std::int64_t transported(std::int64_t after) const {
    return static_cast<std::int64_t>(support_.count_upto(after)) - 1;
  }

  Sequence base_;
  SupportSet support_;
};

inline Sequence spread(const Sequence& seq, const SupportSet& support) {
  return Sequence(std::make_shared<SpreadNode>(seq, support));
}

// ---------------------------------------------------------------------------
// Finite linear combinations

class CombineNode final : public SequenceNode {
 public:
  CombineNode(std::vector<ComplexRational> coeffs, std::vector<Sequence> seqs)
      : coeffs_(std::move(coeffs)), seqs_(std::move(seqs)) {
    if (coeffs_.size() != seqs_.size())
      throw Error(ErrorCode::LengthMismatch, "combine needs as many coefficients as sequences");
  }

  SequenceKind kind() const override { return SequenceKind::Combine; }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    ExactTerm acc = ExactTerm::zero();
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      auto t = seqs_[i].exact_term(n);
      if (!t) return std::nullopt;
      auto s = try_add(acc, coeffs_[i] * *t);
      if (!s) return std::nullopt;
      acc = *s;
    }
    return acc;
  }

  ComplexInterval term(std::uint64_t n, unsigned prec) const override {
    if (auto e = exact_term(n)) return e->enclosure(prec);
    Rational total(0);
    for (const auto& c : coeffs_) total += abs(c.re) + abs(c.im);
    const unsigned extra = magnitude_bits(total) + 2;
    ComplexInterval acc = ComplexInterval::zero();
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      acc = acc + coeffs_[i] * seqs_[i].term_at(n, prec + extra);
    }
    return acc;
  }

  TailProfile profile() const override {
    TailProfile p;
    p.lp = ExponentDomain{Rational(0), false};
    p.bounded = p.vanishing = p.disc = true;
    p.support_end = 0;
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      const TailProfile q = seqs_[i].profile();
      p.lp = intersect(p.lp, q.lp);
      p.bounded = p.bounded && q.bounded;
      p.vanishing = p.vanishing && q.vanishing;
      p.disc = p.disc && q.disc;
      if (p.support_end && q.support_end) p.support_end = std::max(*p.support_end, *q.support_end);
      else p.support_end.reset();
    }
    return p;
  }

  // p ≤ 1: |x+y|^p ≤ |x|^p + |y|^p;  p > 1: Minkowski on the tails.
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    const unsigned bits = bound_bits(prec);
    Rational acc(0);
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      auto t = seqs_[i].tail_pow(after, p, prec);
      if (!t) return std::nullopt;
      if (p <= 1) {
        acc += pow_bound(coeffs_[i].abs2(), Rational(p / 2), Round::Up, bits) * *t;
      } else {
        acc += sqrt_bound(coeffs_[i].abs2(), Round::Up, bits) *
               pow_bound(*t, Rational(1 / p), Round::Up, bits);
      }
    }
    if (p > 1) acc = pow_bound(acc, p, Round::Up, bits);
    return round_bound(acc, Round::Up, bits);
  }

  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    return weighted_sum([&](const Sequence& s) { return s.sup_tail(after, prec); }, prec);
  }

  std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const override {
    return weighted_sum([&](const Sequence& s) { return s.disc_tail(after, r, prec); }, prec);
  }

  Json to_spec() const override {
    Json terms = Json::array();
    for (std::size_t i = 0; i < seqs_.size(); ++i)
      terms.push_back({to_string(coeffs_[i].re), to_string(coeffs_[i].im), seqs_[i].to_spec()});
    return {{"kind", "combine"}, {"terms", terms}};
  }

  const std::vector<ComplexRational>& coefficients() const { return coeffs_; }
  const std::vector<Sequence>& sequences() const { return seqs_; }

 private:
  template <class Fn>
  std::optional<Rational> weighted_sum(Fn fn, unsigned prec) const {
    const unsigned bits = bound_bits(prec);
    Rational acc(0);
    for (std::size_t i = 0; i < seqs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      auto t = fn(seqs_[i]);
      if (!t) return std::nullopt;
      acc += sqrt_bound(coeffs_[i].abs2(), Round::Up, bits) * *t;
    }
    return round_bound(acc, Round::Up, bits);
  }

  std::vector<ComplexRational> coeffs_;
  std::vector<Sequence> seqs_;
};

inline Sequence combine(std::vector<ComplexRational> coeffs, std::vector<Sequence> seqs) {
  return Sequence(std::make_shared<CombineNode>(std::move(coeffs), std::move(seqs)));
}

/// Scalar multiple c·a.
inline Sequence scale(const ComplexRational& c, const Sequence& a) { return combine({c}, {a}); }

}  // namespace seqchain
