#pragma once

// Closed-basis construction: witnesses y_j on the disjoint blocks A_j, exact
// coefficient recovery from one support point, and certificates that nonzero
// finite combinations leave X.

#include <map>
#include <vector>

#include "seqchain/generic.hpp"

namespace seqchain {

inline constexpr unsigned kRecoverEscalations = 4;

struct SpaceableBasis {
  SpaceId inner;
  SpaceId outer;
  std::uint64_t budget = 4096;
  unsigned prec = 64;
  std::map<std::uint64_t, Witness> elements;

  const Witness& at(std::uint64_t j) const {
    auto it = elements.find(j);
    if (it == elements.end()) throw Error(ErrorCode::InvalidArgument, "basis element " + std::to_string(j) + " not built");
    return it->second;
  }
};

inline Witness basis_element(const SpaceId& x, const SpaceId& y, std::uint64_t j, std::uint64_t budget,
                             unsigned prec = 64) {
  if (!strictly_included(x, y))
    throw Error(ErrorCode::NotStrictPair, to_string(x) + " is not strictly included in " + to_string(y));
  return make_witness(x, y, disjoint_support(j), budget, prec);
}

inline SpaceableBasis make_basis(const SpaceId& x, const SpaceId& y, std::uint64_t count, std::uint64_t budget,
                                 unsigned prec = 64) {
  SpaceableBasis b{x, y, budget, prec, {}};
  for (std::uint64_t j = 1; j <= count; ++j) b.elements.emplace(j, basis_element(x, y, j, budget, prec));
  return b;
}

inline Sequence basis_combination(const SpaceableBasis& basis, const std::vector<std::uint64_t>& active,
                                  const std::vector<ComplexRational>& t) {
  if (t.size() != active.size()) throw Error(ErrorCode::LengthMismatch, "one coefficient per active element");
  std::vector<Sequence> ys;
  for (std::uint64_t j : active) ys.push_back(basis.at(j).seq);
  return combine(t, ys);
}

namespace detail {

struct Pivot {
  std::uint64_t index;
  unsigned prec;
};

/// First point of A_j ≤ budget where y_j is provably nonzero, raising the
/// precision before giving up.
inline Pivot pivot_point(const Witness& y, std::uint64_t budget, unsigned prec) {
  unsigned p = prec;
  for (unsigned round = 0; round <= kRecoverEscalations; ++round, p *= 2) {
    for (std::uint64_t k = 1;; ++k) {
      if (y.support.is_finite() && k > y.support.size()) break;
      const std::uint64_t n = y.support.nth(k);
      if (n > budget) break;
      if (auto e = y.seq.exact_term(n)) {
        if (!e->is_zero()) return {n, p};
        continue;
      }
      if (y.seq.term_at(n, p).excludes_zero()) return {n, p};
    }
  }
  throw Error(ErrorCode::NoNonzeroSupportPoint, "no provably nonzero support point within the budget");
}

}  // namespace detail

/// f(i_0) / y_j(i_0); a point interval whenever both terms are exact and share
/// a radical.
inline ComplexInterval recover_coefficient(const Sequence& f, const SpaceableBasis& basis, std::uint64_t j,
                                           unsigned prec) {
  const Witness& y = basis.at(j);
  const detail::Pivot piv = detail::pivot_point(y, basis.budget, prec);
  auto fe = f.exact_term(piv.index);
  auto ye = y.seq.exact_term(piv.index);
  if (fe && ye)
    if (auto q = try_divide(*fe, *ye)) return ComplexInterval::point(*q);
  return f.term_at(piv.index, piv.prec) / y.seq.term_at(piv.index, piv.prec);
}

inline OutsideXCertificate certify_combination_outside(const Sequence& f, const SpaceableBasis& basis,
                                                       const std::vector<std::uint64_t>& active,
                                                       std::uint64_t budget, unsigned prec) {
  std::vector<std::uint64_t> order = active;
  std::sort(order.begin(), order.end());
  for (std::uint64_t j : order) {
    const ComplexInterval c = recover_coefficient(f, basis, j, prec);
    if (!c.excludes_zero()) continue;
    const Witness& y = basis.at(j);
    if (!c.is_exact()) throw Error(ErrorCode::Internal, "inexact coefficient; the restriction identity needs exact terms");
    return detail::build_outside(f, j, 0, c.center(), y, budget, prec);
  }
  throw Error(ErrorCode::AllCoefficientsPossiblyZero, "no recovered coefficient is provably nonzero");
}

/// y_j vanishes on A_{j'} for n ≤ budget.
inline bool cross_support_zero(const SpaceableBasis& basis, std::uint64_t j, std::uint64_t j_other,
                               std::uint64_t budget) {
  return supported_in(basis.at(j).seq, SupportSet::complement(disjoint_support(j_other)), budget, basis.prec);
}

inline Json to_json(const SpaceableBasis& b) {
  Json elems = Json::array();
  for (const auto& [j, w] : b.elements) {
    Json e = to_json(w);
    e["j"] = j;
    elems.push_back(std::move(e));
  }
  return {{"inner", to_string(b.inner)}, {"outer", to_string(b.outer)}, {"elements", std::move(elems)}};
}

}  // namespace seqchain
