#pragma once

// Index sets A ⊆ N0, accessed through membership and ordered enumeration.
// Enumeration is 1-based: nth(1) is the smallest element.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "seqchain/errors.hpp"
#include "seqchain/rational.hpp"

namespace seqchain {

using Json = nlohmann::json;

namespace detail {

inline constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 62;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kIndexLimit / a) throw Error(ErrorCode::BudgetExceeded, "index overflow");
  return a * b;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > kIndexLimit - b) throw Error(ErrorCode::BudgetExceeded, "index overflow");
  return a + b;
}

class SupportImpl {
 public:
  virtual ~SupportImpl() = default;
  virtual bool member(std::uint64_t n) const = 0;
  virtual std::uint64_t nth(std::uint64_t k) const = 0;
  virtual bool finite() const { return false; }
  virtual std::uint64_t size() const { return 0; }
  virtual Json spec() const = 0;

  /// Smallest k with nth(k) ≥ t, or nullopt when the set is exhausted.
  virtual std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const {
    if (finite()) {
      std::uint64_t lo = 1, hi = size();
      if (hi == 0 || nth(hi) < t) return std::nullopt;
      while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (nth(mid) >= t) hi = mid; else lo = mid + 1;
      }
      return lo;
    }
    std::uint64_t hi = 1;
    while (nth(hi) < t) hi = checked_mul(hi, 2);
    std::uint64_t lo = hi / 2 + 1;
    if (hi == 1) return 1;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (nth(mid) >= t) hi = mid; else lo = mid + 1;
    }
    return lo;
  }
};

class AllImpl final : public SupportImpl {
 public:
  bool member(std::uint64_t) const override { return true; }
  std::uint64_t nth(std::uint64_t k) const override { return k - 1; }
  Json spec() const override { return {{"kind", "all"}}; }
  std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const override { return t + 1; }
};

class PowersOfTwoImpl final : public SupportImpl {
 public:
  bool member(std::uint64_t n) const override { return n != 0 && (n & (n - 1)) == 0; }
  std::uint64_t nth(std::uint64_t k) const override {
    if (k > 62) throw Error(ErrorCode::BudgetExceeded, "index overflow");
    return std::uint64_t{1} << (k - 1);
  }
  Json spec() const override { return {{"kind", "powers-of-two"}}; }
  std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const override {
    if (t <= 1) return 1;
    const unsigned l = floor_log2(t - 1) + 1;  // 2^l ≥ t
    return l + 1;
  }
};

/// {n : v2(n+1) = j-1}; nth(k) = 2^(j-1)(2k-1) - 1.
class DyadicRowImpl final : public SupportImpl {
 public:
  explicit DyadicRowImpl(std::uint64_t j) : j_(j) {
    if (j < 1 || j > 60) throw Error(ErrorCode::InvalidArgument, "dyadic row index must be in [1, 60]");
  }
  bool member(std::uint64_t n) const override { return valuation2(n + 1) == j_ - 1; }
  std::uint64_t nth(std::uint64_t k) const override {
    return checked_mul(std::uint64_t{1} << (j_ - 1), checked_add(2 * (k - 1), 1)) - 1;
  }
  Json spec() const override { return {{"kind", "dyadic-row"}, {"j", j_}}; }
  std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const override {
    // 2^(j-1)(2k-1) ≥ t+1  ⇔  k ≥ ((t+1)/2^(j-1) + 1)/2
    const std::uint64_t step = std::uint64_t{1} << (j_ - 1);
    const std::uint64_t q = (t + 1 + step - 1) / step;  // ⌈(t+1)/step⌉
    return (q + 1 + 1) / 2;                              // ⌈(q+1)/2⌉
  }

 private:
  std::uint64_t j_;
};

class ArithImpl final : public SupportImpl {
 public:
  ArithImpl(std::uint64_t start, std::uint64_t step) : start_(start), step_(step) {
    if (step == 0) throw Error(ErrorCode::InvalidArgument, "arith step must be positive");
  }
  bool member(std::uint64_t n) const override { return n >= start_ && (n - start_) % step_ == 0; }
  std::uint64_t nth(std::uint64_t k) const override {
    return checked_add(start_, checked_mul(k - 1, step_));
  }
  Json spec() const override { return {{"kind", "arith"}, {"start", start_}, {"step", step_}}; }
  std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const override {
    if (t <= start_) return 1;
    return (t - start_ + step_ - 1) / step_ + 1;
  }

 private:
  std::uint64_t start_;
  std::uint64_t step_;
};

class ExplicitImpl final : public SupportImpl {
 public:
  explicit ExplicitImpl(std::vector<std::uint64_t> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }
  bool member(std::uint64_t n) const override {
    return std::binary_search(elems_.begin(), elems_.end(), n);
  }
  std::uint64_t nth(std::uint64_t k) const override {
    if (k == 0 || k > elems_.size()) throw Error(ErrorCode::InvalidArgument, "index past a finite support set");
    return elems_[k - 1];
  }
  bool finite() const override { return true; }
  std::uint64_t size() const override { return elems_.size(); }
  Json spec() const override { return {{"kind", "explicit-finite"}, {"elems", elems_}}; }

 private:
  std::vector<std::uint64_t> elems_;
};

}  // namespace detail

class SupportSet {
 public:
  static SupportSet all() { return SupportSet(std::make_shared<detail::AllImpl>()); }
  static SupportSet powers_of_two() { return SupportSet(std::make_shared<detail::PowersOfTwoImpl>()); }
  static SupportSet dyadic_row(std::uint64_t j) { return SupportSet(std::make_shared<detail::DyadicRowImpl>(j)); }
  static SupportSet arith(std::uint64_t start, std::uint64_t step) {
    return SupportSet(std::make_shared<detail::ArithImpl>(start, step));
  }
  static SupportSet explicit_finite(std::vector<std::uint64_t> elems) {
    return SupportSet(std::make_shared<detail::ExplicitImpl>(std::move(elems)));
  }
  /// A ∩ [start, ∞).
  static SupportSet at_least(const SupportSet& base, std::uint64_t start);
  /// N0 ∖ A (treated as infinite unless A is all of N0).
  static SupportSet complement(const SupportSet& base);
  /// Arbitrary set given by its two oracles; not serializable.
  static SupportSet custom(std::function<bool(std::uint64_t)> member,
                           std::function<std::uint64_t(std::uint64_t)> nth, bool finite = false,
                           std::uint64_t size = 0);

  bool member(std::uint64_t n) const { return impl_->member(n); }
  std::uint64_t nth(std::uint64_t k) const {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "support enumeration is 1-based");
    return impl_->nth(k);
  }
  bool is_finite() const { return impl_->finite(); }
  std::uint64_t size() const { return impl_->size(); }

  /// (k, nth(k)) for the smallest element ≥ t.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_at_least(std::uint64_t t) const {
    auto k = impl_->first_index_at_least(t);
    if (!k) return std::nullopt;
    return std::make_pair(*k, impl_->nth(*k));
  }

  /// Number of elements ≤ n (0 for n < 0).
  std::uint64_t count_upto(std::int64_t n) const {
    if (n < 0) return 0;
    auto k = impl_->first_index_at_least(static_cast<std::uint64_t>(n) + 1);
    if (!k) return impl_->size();
    return *k - 1;
  }

  Json to_spec() const { return impl_->spec(); }

 private:
  explicit SupportSet(std::shared_ptr<const detail::SupportImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::SupportImpl> impl_;
};

namespace detail {

class AtLeastImpl final : public SupportImpl {
 public:
  AtLeastImpl(SupportSet base, std::uint64_t start) : base_(std::move(base)), start_(start) {
    auto first = base_.first_at_least(start);
    offset_ = first ? first->first - 1 : 0;
    empty_ = !first.has_value();
  }
  bool member(std::uint64_t n) const override { return n >= start_ && base_.member(n); }
  std::uint64_t nth(std::uint64_t k) const override {
    if (finite() && k > size()) throw Error(ErrorCode::InvalidArgument, "index past a finite support set");
    return base_.nth(offset_ + k);
  }
  bool finite() const override { return base_.is_finite(); }
  std::uint64_t size() const override { return empty_ ? 0 : base_.size() - offset_; }
  Json spec() const override { return {{"kind", "at-least"}, {"base", base_.to_spec()}, {"start", start_}}; }
  std::optional<std::uint64_t> first_index_at_least(std::uint64_t t) const override {
    if (empty_) return std::nullopt;
    auto f = base_.first_at_least(std::max(t, start_));
    if (!f) return std::nullopt;
    return f->first - offset_;
  }

 private:
  SupportSet base_;
  std::uint64_t start_;
  std::uint64_t offset_ = 0;
  bool empty_ = false;
};

class ComplementImpl final : public SupportImpl {
 public:
  explicit ComplementImpl(SupportSet base) : base_(std::move(base)) {}
  bool member(std::uint64_t n) const override { return !base_.member(n); }
  std::uint64_t nth(std::uint64_t k) const override {
    // smallest n with (n + 1 - |A ∩ [0, n]|) ≥ k
    auto count = [&](std::uint64_t n) { return n + 1 - base_.count_upto(static_cast<std::int64_t>(n)); };
    std::uint64_t hi = k;
    while (count(hi) < k) hi = checked_mul(hi, 2);
    std::uint64_t lo = k - 1;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (count(mid) >= k) hi = mid; else lo = mid + 1;
    }
    return lo;
  }
  bool finite() const override {
    try {
      return base_.to_spec().value("kind", "") == "all";
    } catch (const Error&) {
      return false;
    }
  }
  Json spec() const override { return {{"kind", "complement"}, {"base", base_.to_spec()}}; }

 private:
  SupportSet base_;
};

class CustomImpl final : public SupportImpl {
 public:
  CustomImpl(std::function<bool(std::uint64_t)> member, std::function<std::uint64_t(std::uint64_t)> nth,
             bool finite, std::uint64_t size)
      : member_(std::move(member)), nth_(std::move(nth)), finite_(finite), size_(size) {}
  bool member(std::uint64_t n) const override { return member_(n); }
  std::uint64_t nth(std::uint64_t k) const override { return nth_(k); }
  bool finite() const override { return finite_; }
  std::uint64_t size() const override { return size_; }
  Json spec() const override { throw Error(ErrorCode::InvalidArgument, "custom support sets are not serializable"); }

 private:
  std::function<bool(std::uint64_t)> member_;
  std::function<std::uint64_t(std::uint64_t)> nth_;
  bool finite_;
  std::uint64_t size_;
};

}  // namespace detail

inline SupportSet SupportSet::at_least(const SupportSet& base, std::uint64_t start) {
  return SupportSet(std::make_shared<detail::AtLeastImpl>(base, start));
}

inline SupportSet SupportSet::complement(const SupportSet& base) {
  return SupportSet(std::make_shared<detail::ComplementImpl>(base));
}

inline SupportSet SupportSet::custom(std::function<bool(std::uint64_t)> member,
                                     std::function<std::uint64_t(std::uint64_t)> nth, bool finite,
                                     std::uint64_t size) {
  return SupportSet(std::make_shared<detail::CustomImpl>(std::move(member), std::move(nth), finite, size));
}

}  // namespace seqchain
