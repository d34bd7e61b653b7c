#pragma once

// JSON sequence and support specs, the persistence format shared with the CLI.

#include <string>
#include <string_view>

#include "seqchain/families.hpp"

namespace seqchain {

namespace detail {

[[noreturn]] inline void spec_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) spec_error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::uint64_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) spec_error(where + ": expected a natural number");
  return j.get<std::uint64_t>();
}

inline Rational rational(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      spec_error(where + ": malformed rational " + j.dump());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
  spec_error(where + ": expected a rational string \"num/den\"");
}

}  // namespace detail

inline SupportSet parse_support(const Json& j) {
  const std::string kind = detail::field(j, "kind", "support").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "all") return SupportSet::all();
  if (kind == "powers-of-two") return SupportSet::powers_of_two();
  if (kind == "dyadic-row") {
    const auto r = detail::natural(detail::field(j, "j", "dyadic-row"), "dyadic-row.j");
    if (r == 0 || r > 60) detail::spec_error("dyadic-row.j must lie in 1..60");
    return SupportSet::dyadic_row(r);
  }
  if (kind == "arith") {
    const auto step = detail::natural(detail::field(j, "step", "arith"), "arith.step");
    if (step == 0) detail::spec_error("arith.step must be positive");
    return SupportSet::arith(detail::natural(detail::field(j, "start", "arith"), "arith.start"), step);
  }
  if (kind == "explicit-finite") {
    const Json& elems = detail::field(j, "elems", "explicit-finite");
    if (!elems.is_array()) detail::spec_error("explicit-finite.elems must be an array");
    std::vector<std::uint64_t> v;
    for (const auto& e : elems) v.push_back(detail::natural(e, "explicit-finite.elems"));
    return SupportSet::explicit_finite(std::move(v));
  }
  if (kind == "at-least")
    return SupportSet::at_least(parse_support(detail::field(j, "base", "at-least")),
                                detail::natural(detail::field(j, "start", "at-least"), "at-least.start"));
  if (kind == "complement") return SupportSet::complement(parse_support(detail::field(j, "base", "complement")));
  detail::spec_error("unknown support kind '" + kind + "'");
}

inline Sequence parse_family(const std::string& name, const Json& params) {
  auto param = [&](const char* key) { return detail::rational(detail::field(params, key, name), name + "." + key); };
  auto support = [&] { return parse_support(detail::field(params, "support", name)); };
  if (name == "prop28") return prop28();
  if (name == "rem29") return rem29(support());
  if (name == "nat") return nat();
  if (name == "nat-power") return nat_power();
  if (name == "nn-on-support") return nn_on_support(support());
  if (name == "const-one") return const_one();
  if (name == "gap-lp-cap") return gap_lp_cap(param("a"));
  if (name == "gap-cap-lp") return gap_cap_lp(param("a"), param("b"));
  if (name == "gap-cap-c0") return gap_cap_c0(param("q"));
  detail::spec_error("unknown family '" + name + "'");
}

inline Sequence parse_sequence(const Json& j) {
  const Json& k = detail::field(j, "kind", "sequence");
  if (!k.is_string()) detail::spec_error("sequence.kind must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "finite") {
    const Json& entries = detail::field(j, "entries", "finite");
    if (!entries.is_array()) detail::spec_error("finite.entries must be an array");
    std::map<std::uint64_t, ComplexRational> m;
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) detail::spec_error("finite entry must be [n, re, im]");
      const auto n = detail::natural(e[0], "finite entry index");
      if (n >= detail::kIndexLimit) detail::spec_error("finite entry index too large");
      const Rational re = detail::rational(e[1], "finite entry");
      const Rational im = e.size() == 3 ? detail::rational(e[2], "finite entry") : Rational(0);
      if (m.count(n)) detail::spec_error("duplicate finite entry index " + std::to_string(n));
      m.emplace(n, ComplexRational(re, im));
    }
    return finite_sequence(std::move(m));
  }
  if (kind == "family") {
    const Json& name = detail::field(j, "name", "family");
    if (!name.is_string()) detail::spec_error("family.name must be a string");
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    if (!params.is_object()) detail::spec_error("family.params must be an object");
    return parse_family(name.get<std::string>(), params);
  }
  if (kind == "spread")
    return spread(parse_sequence(detail::field(j, "base", "spread")), parse_support(detail::field(j, "support", "spread")));
  if (kind == "restrict")
    return restrict(parse_sequence(detail::field(j, "base", "restrict")),
                    parse_support(detail::field(j, "support", "restrict")));
  if (kind == "combine") {
    const Json& terms = detail::field(j, "terms", "combine");
    if (!terms.is_array()) detail::spec_error("combine.terms must be an array");
    std::vector<ComplexRational> cs;
    std::vector<Sequence> ss;
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3) detail::spec_error("combine term must be [re, im, spec]");
      cs.emplace_back(detail::rational(t[0], "combine coefficient"), detail::rational(t[1], "combine coefficient"));
      ss.push_back(parse_sequence(t[2]));
    }
    return combine(std::move(cs), std::move(ss));
  }
  detail::spec_error("unknown sequence kind '" + kind + "'");
}

/// Parses JSON text; syntax errors report the byte offset.
inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at byte " + std::to_string(e.byte));
  }
}

inline Sequence parse_sequence_text(std::string_view text) { return parse_sequence(parse_json_text(text)); }

}  // namespace seqchain
