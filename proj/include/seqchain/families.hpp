#pragma once

// The named closed-form sequences: the separating witnesses of the chain and a
// few reference sequences. Every family ships its tail bounds and growth tags
// in closed form.

#include <string>
#include <vector>

#include "seqchain/sequence.hpp"

namespace seqchain {

namespace detail {

class FamilyNode : public SequenceNode {
 public:
  SequenceKind kind() const override { return SequenceKind::Family; }
  virtual std::string name() const = 0;
  virtual Json params() const { return Json::object(); }
  Json to_spec() const override { return {{"kind", "family"}, {"name", name()}, {"params", params()}}; }
};

/// Upper bound on Σ_{k ≥ k0} 2^(-k·e) = 2^(-k0·e) / (1 - 2^(-e)), e > 0.
inline Rational geometric_tail(std::uint64_t k0, const Rational& e, unsigned bits) {
  const Rational head = pow_bound(Rational(1, 2), Rational(from_u64(k0) * e), Round::Up, bits + 8);
  const Rational ratio = pow_bound(Rational(1, 2), e, Round::Up, bits + 8);
  return div_bound(head, Rational(1 - ratio), Round::Up, bits);
}

// y_{σ(n)} = σ(n)^(-1/2), n ≥ 1, where σ(1) is the first element of A that is
// ≥ 2 and σ(n+1) the first element after σ(n) that is ≥ 2^(n+1). On the powers
// of two σ(n) = 2^n and this is y_{2^n} = √(1/2^n).
class SqrtSelectionNode final : public FamilyNode {
 public:
  SqrtSelectionNode(SupportSet support, bool canonical) : support_(std::move(support)), canonical_(canonical) {
    if (support_.is_finite()) throw Error(ErrorCode::FiniteSupportSet, "selection needs an infinite support set");
    std::uint64_t prev = 0;
    for (unsigned n = 1; n < 62; ++n) {
      const std::uint64_t target = std::max(std::uint64_t{1} << n, sigma_.empty() ? 0 : prev + 1);
      if (target >= kIndexLimit) break;
      auto f = support_.first_at_least(target);
      if (!f || f->second >= kIndexLimit) break;
      prev = f->second;
      sigma_.push_back(prev);
    }
  }

  std::string name() const override { return canonical_ ? "prop28" : "rem29"; }
  Json params() const override {
    if (canonical_) return Json::object();
    return {{"support", support_.to_spec()}};
  }

  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    auto it = std::lower_bound(sigma_.begin(), sigma_.end(), n);
    if (it == sigma_.end() || *it != n) return ExactTerm::zero();
    return ExactTerm::power(Rational(1 / from_u64(n)), Rational(1, 2));
  }

  TailProfile profile() const override {
    TailProfile p;
    p.lp = ExponentDomain{Rational(0), false};
    p.bounded = p.vanishing = p.disc = true;
    return p;
  }

  // σ(n) ≥ 2^n, so Σ_{σ(n) > N} σ(n)^(-p/2) ≤ Σ_{n ≥ n0} 2^(-np/2).
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    return geometric_tail(first_after(after), Rational(p / 2), bound_bits(prec));
  }

  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    return pow_bound(Rational(1, 2), Rational(from_u64(first_after(after)) / 2), Round::Up, bound_bits(prec));
  }

  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::SubseqLowerBound;
    t.label = name();
    t.weight = 1;
    t.first_m = 1;
    auto sigma = sigma_;
    t.index = [sigma](std::uint64_t m) {
      if (m == 0 || m > sigma.size()) throw Error(ErrorCode::BudgetExceeded, "selection index out of range");
      return sigma[m - 1];
    };
    t.bound = [](std::uint64_t m) { return PowerProduct().times(Rational(2), Rational(from_u64(m) / 2)); };
    return {t};
  }

  const std::vector<std::uint64_t>& positions() const { return sigma_; }

 private:
  // Smallest n ≥ 1 with σ(n) > after.
  std::uint64_t first_after(std::int64_t after) const {
    if (after < 0) return 1;
    auto it = std::upper_bound(sigma_.begin(), sigma_.end(), static_cast<std::uint64_t>(after));
    return static_cast<std::uint64_t>(it - sigma_.begin()) + 1;
  }

  SupportSet support_;
  bool canonical_;
  std::vector<std::uint64_t> sigma_;
};

class NatNode final : public FamilyNode {
 public:
  std::string name() const override { return "nat"; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    return ExactTerm::rational(ComplexRational(from_u64(n)));
  }
  TailProfile profile() const override {
    TailProfile p;
    p.disc = true;
    return p;
  }
  // Σ_{n ≥ M} n r^n = r^M (M - (M-1) r) / (1-r)^2 with M = N + 1.
  std::optional<Rational> disc_tail(std::int64_t after, const Rational& r, unsigned prec) const override {
    if (r <= 0 || r >= 1) throw Error(ErrorCode::InvalidArgument, "disc radius must lie in (0, 1)");
    const Rational m(Integer(static_cast<long>(after + 1)));
    const Rational one_minus = 1 - r;
    const Rational v = pow(r, after + 1) * (m - (m - 1) * r) / (one_minus * one_minus);
    return round_bound(v, Round::Up, bound_bits(prec));
  }
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::SubseqLowerBound;
    t.label = "nat";
    t.weight = 0;
    t.first_m = 1;
    t.index = [](std::uint64_t m) { return m; };
    t.bound = [](std::uint64_t m) { return PowerProduct(from_u64(m)); };
    return {t};
  }
};

class NatPowerNode final : public FamilyNode {
 public:
  std::string name() const override { return "nat-power"; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    return ExactTerm::rational(ComplexRational(pow(from_u64(n), static_cast<long>(n + 1))));
  }
  TailProfile profile() const override { return {}; }
  // |a_{m+1}| = (m+1)^(m+2) ≥ (m+1)^(m+1).
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::RootLowerBound;
    t.label = "nat-power";
    t.first_m = 1;
    t.index = [](std::uint64_t m) { return m + 1; };
    t.bound = [](std::uint64_t m) { return PowerProduct(from_u64(m + 1)); };
    return {t};
  }
};

// c_l = l^l on A (0^0 = 1), 0 elsewhere.
class NnOnSupportNode final : public FamilyNode {
 public:
  explicit NnOnSupportNode(SupportSet support) : support_(std::move(support)) {
    if (support_.is_finite()) throw Error(ErrorCode::FiniteSupportSet, "nn-on-support needs an infinite support set");
  }
  std::string name() const override { return "nn-on-support"; }
  Json params() const override { return {{"support", support_.to_spec()}}; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    if (!support_.member(n)) return ExactTerm::zero();
    if (n == 0) return ExactTerm::rational(ComplexRational(Rational(1)));
    return ExactTerm::rational(ComplexRational(pow(from_u64(n), static_cast<long>(n))));
  }
  TailProfile profile() const override { return {}; }
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::RootLowerBound;
    t.label = "nn-on-support";
    t.first_m = 1;
    const std::uint64_t k0 = support_.first_at_least(2)->first;
    SupportSet a = support_;
    t.index = [a, k0](std::uint64_t m) { return a.nth(k0 + m - 1); };
    t.bound = [a, k0](std::uint64_t m) { return PowerProduct(from_u64(a.nth(k0 + m - 1))); };
    return {t};
  }

 private:
  SupportSet support_;
};

class ConstOneNode final : public FamilyNode {
 public:
  std::string name() const override { return "const-one"; }
  std::optional<ExactTerm> exact_term(std::uint64_t) const override {
    return ExactTerm::rational(ComplexRational(Rational(1)));
  }
  TailProfile profile() const override {
    TailProfile p;
    p.bounded = p.disc = true;
    return p;
  }
  std::optional<Rational> sup_tail(std::int64_t, unsigned) const override { return Rational(1); }
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::SubseqLowerBound;
    t.label = "const-one";
    t.divergent = false;
    t.first_m = 0;
    t.index = [](std::uint64_t m) { return m; };
    t.bound = [](std::uint64_t) { return PowerProduct(Rational(1)); };
    return {t};
  }
};

// |a_n| = 2^(-L(n+2)/a), L = ⌊log2⌋. Block j = {n : L(n+2) = j} has 2^j terms,
// so Σ|a_n|^p = Σ_j 2^(j(1-p/a)): finite exactly for p > a, and each block
// contributes 1 at p = a.
class GapLpCapNode final : public FamilyNode {
 public:
  explicit GapLpCapNode(Rational a) : a_(std::move(a)) {
    if (a_ <= 0) throw Error(ErrorCode::InvalidArgument, "gap-lp-cap needs a > 0");
  }
  std::string name() const override { return "gap-lp-cap"; }
  Json params() const override { return {{"a", to_string(a_)}}; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    return ExactTerm::power(Rational(1, 2), Rational(Rational(floor_log2(n + 2)) / a_));
  }
  TailProfile profile() const override {
    TailProfile p;
    p.lp = ExponentDomain{a_, false};
    p.bounded = p.vanishing = p.disc = true;
    return p;
  }
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    if (p <= a_) return std::nullopt;
    const unsigned bits = bound_bits(prec);
    const std::uint64_t m = static_cast<std::uint64_t>(after + 3);
    const unsigned j0 = floor_log2(m);
    // partial block j0, then the full blocks j > j0
    const Rational count = from_u64((std::uint64_t{1} << (j0 + 1)) - m);
    const Rational e = p / a_;
    Rational total = count * pow_bound(Rational(1, 2), Rational(Rational(j0) * e), Round::Up, bits + 8);
    total += geometric_tail(j0 + 1, Rational(e - 1), bits + 8);
    return round_bound(total, Round::Up, bits);
  }
  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    const unsigned j0 = floor_log2(static_cast<std::uint64_t>(after + 3));
    return pow_bound(Rational(1, 2), Rational(Rational(j0) / a_), Round::Up, bound_bits(prec));
  }
  // Σ_{n ≤ 2^(J+1)-3} |a_n|^a = J.
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::PartialSumLowerBound;
    t.label = "gap-lp-cap";
    t.exponent = a_;
    t.first_m = 1;
    t.index = [](std::uint64_t m) { return (std::uint64_t{1} << (m + 1)) - 3; };
    t.bound = [](std::uint64_t m) { return PowerProduct(from_u64(m)); };
    return {t};
  }

 private:
  Rational a_;
};

// |a_n| = (n+1)^(-2/(lo+hi)): in ℓ^p exactly for p > (lo+hi)/2.
class GapCapLpNode final : public FamilyNode {
 public:
  GapCapLpNode(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ < 0 || hi_ <= lo_) throw Error(ErrorCode::InvalidArgument, "gap-cap-lp needs 0 ≤ a < b");
    mid_ = (lo_ + hi_) / 2;
    sigma_ = 1 / mid_;
  }
  std::string name() const override { return "gap-cap-lp"; }
  Json params() const override { return {{"a", to_string(lo_)}, {"b", to_string(hi_)}}; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    return ExactTerm::power(Rational(1 / from_u64(n + 1)), sigma_);
  }
  TailProfile profile() const override {
    TailProfile p;
    p.lp = ExponentDomain{mid_, false};
    p.bounded = p.vanishing = p.disc = true;
    return p;
  }
  // Σ_{m ≥ M} m^(-e) ≤ M^(-e) + M^(1-e)/(e-1), M = N + 2.
  std::optional<Rational> tail_pow(std::int64_t after, const Rational& p, unsigned prec) const override {
    const Rational e = p * sigma_;
    if (e <= 1) return std::nullopt;
    const unsigned bits = bound_bits(prec);
    const Rational m = from_u64(static_cast<std::uint64_t>(after + 2));
    Rational total = pow_bound(m, Rational(-e), Round::Up, bits + 8);
    total += div_bound(pow_bound(m, Rational(1 - e), Round::Up, bits + 8), Rational(e - 1), Round::Up, bits + 8);
    return round_bound(total, Round::Up, bits);
  }
  std::optional<Rational> sup_tail(std::int64_t after, unsigned prec) const override {
    const Rational m = from_u64(static_cast<std::uint64_t>(after + 2));
    return pow_bound(m, Rational(-sigma_), Round::Up, bound_bits(prec));
  }
  // Σ_{n ≤ 2^m - 1} |a_n|^((lo+hi)/2) = H_(2^m) ≥ 1 + m/2.
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::PartialSumLowerBound;
    t.label = "gap-cap-lp";
    t.exponent = mid_;
    t.first_m = 1;
    t.index = [](std::uint64_t m) { return (std::uint64_t{1} << m) - 1; };
    t.bound = [](std::uint64_t m) { return PowerProduct(Rational(1 + from_u64(m) / 2)); };
    return {t};
  }

 private:
  Rational lo_, hi_, mid_, sigma_;
};

// |a_n| = 1/L(n+2): vanishing, in no ℓ^p.
class GapCapC0Node final : public FamilyNode {
 public:
  explicit GapCapC0Node(Rational q) : q_(std::move(q)) {
    if (!is_integer(q_) || q_ < 1) throw Error(ErrorCode::InvalidArgument, "gap-cap-c0 needs an integer q ≥ 1");
  }
  std::string name() const override { return "gap-cap-c0"; }
  Json params() const override { return {{"q", to_string(q_)}}; }
  std::optional<ExactTerm> exact_term(std::uint64_t n) const override {
    return ExactTerm::rational(ComplexRational(Rational(1, floor_log2(n + 2))));
  }
  TailProfile profile() const override {
    TailProfile p;
    p.bounded = p.vanishing = p.disc = true;
    return p;
  }
  std::optional<Rational> sup_tail(std::int64_t after, unsigned) const override {
    return Rational(1, floor_log2(static_cast<std::uint64_t>(after + 3)));
  }
  // Σ_{n ≤ 2^(J+1)-3} |a_n|^q = Σ_{j ≤ J} 2^j / j^q.
  std::vector<GrowthTag> growth_tags() const override {
    GrowthTag t;
    t.kind = GrowthKind::PartialSumLowerBound;
    t.label = "gap-cap-c0";
    t.exponent = q_;
    t.first_m = 1;
    const long q = q_.get_num().get_si();
    t.index = [](std::uint64_t m) { return (std::uint64_t{1} << (m + 1)) - 3; };
    t.bound = [q](std::uint64_t m) {
      Rational s(0);
      for (std::uint64_t j = 1; j <= m; ++j) s += two_pow(static_cast<long>(j)) / pow(from_u64(j), q);
      return PowerProduct(s);
    };
    return {t};
  }

 private:
  Rational q_;
};

}  // namespace detail

inline Sequence prop28() {
  return Sequence(std::make_shared<detail::SqrtSelectionNode>(SupportSet::powers_of_two(), true));
}
inline Sequence rem29(const SupportSet& a) { return Sequence(std::make_shared<detail::SqrtSelectionNode>(a, false)); }
inline Sequence nat() { return Sequence(std::make_shared<detail::NatNode>()); }
inline Sequence nat_power() { return Sequence(std::make_shared<detail::NatPowerNode>()); }
inline Sequence nn_on_support(const SupportSet& a) { return Sequence(std::make_shared<detail::NnOnSupportNode>(a)); }
inline Sequence const_one() { return Sequence(std::make_shared<detail::ConstOneNode>()); }
inline Sequence gap_lp_cap(const Rational& a) { return Sequence(std::make_shared<detail::GapLpCapNode>(a)); }
inline Sequence gap_cap_lp(const Rational& a, const Rational& b) {
  return Sequence(std::make_shared<detail::GapCapLpNode>(a, b));
}
inline Sequence gap_cap_c0(const Rational& q) { return Sequence(std::make_shared<detail::GapCapC0Node>(q)); }

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"prop28",     "rem29",      "nat",        "nat-power", "nn-on-support",
                                                 "gap-lp-cap", "gap-cap-lp", "gap-cap-c0", "const-one"};
  return names;
}

}  // namespace seqchain
