#pragma once

// Report builders behind the seqchain command line. Each cmd_* returns a JSON
// report plus its exit code; rendering and I/O live in tools/seqchain.cpp.

#include <functional>
#include <sstream>

#include "seqchain/spaceable.hpp"

namespace seqchain {

inline constexpr const char* kSchema = "seqchain/1";

enum class Format { Json, Text };

struct RunConfig {
  std::uint64_t budget = 4096;
  unsigned prec = 64;
  std::optional<Rational> epsilon;
  std::uint64_t seed = 0;
  Format format = Format::Json;

  void validate() const {
    if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
    if (prec < 8) throw Error(ErrorCode::InvalidArgument, "prec must be at least 8");
  }
};

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUndecided = 2 };

struct Report {
  Json body;
  int exit_code = kExitOk;
};

namespace detail {

inline Json header(const char* command, const RunConfig& cfg) {
  return {{"schema", kSchema}, {"command", command}, {"budget", cfg.budget}, {"prec", cfg.prec}, {"seed", cfg.seed}};
}

inline Json interval_json(const ComplexInterval& z) {
  return {{"re", {to_string(z.re.lo), to_string(z.re.hi)}}, {"im", {to_string(z.im.lo), to_string(z.im.hi)}}};
}

inline std::vector<Rational> parse_grid_axis(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (auto dots = item.find(".."); dots != std::string::npos) {
      const Rational lo = parse_rational(item.substr(0, dots));
      const Rational hi = parse_rational(item.substr(dots + 2));
      if (!is_integer(lo) || !is_integer(hi) || hi < lo || hi - lo > 100000)
        throw Error(ErrorCode::ParseError, "bad range '" + item + "'");
      for (Rational v = lo; v <= hi; v += 1) out.push_back(v);
    } else {
      out.push_back(parse_rational(item));
    }
  }
  return out;
}

}  // namespace detail

inline Report error_report(const char* command, const Error& e) {
  return {{{"schema", kSchema},
           {"command", command},
           {"error", {{"code", std::string(error_name(e.code()))}, {"message", e.detail()}}}},
          kExitError};
}

/// Wraps a report builder so library errors become an error report.
template <class F>
Report guarded(const char* command, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    return error_report(command, e);
  } catch (const std::exception& e) {
    return error_report(command, Error(ErrorCode::Internal, e.what()));
  }
}

using WitnessBuilder = std::function<Witness(const SpaceId&, const SpaceId&, std::uint64_t budget, unsigned prec)>;

inline Witness default_witness(const SpaceId& x, const SpaceId& y, std::uint64_t budget, unsigned prec) {
  return make_witness(x, y, SupportSet::all(), budget, prec);
}

inline Report cmd_chain(bool verify, const RunConfig& cfg, const WitnessBuilder& build = default_witness) {
  return guarded("chain", [&]() -> Report {
    cfg.validate();
    Json r = detail::header("chain", cfg);
    const auto members = chain(Rational(1), Rational(2));
    Json names = Json::array();
    for (const auto& m : members) names.push_back(to_string(m));
    r["members"] = names;
    if (!verify) return {r, kExitOk};
    Json pairs = Json::array();
    std::size_t ok = 0;
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      Json p = {{"inner", to_string(members[i])}, {"outer", to_string(members[i + 1])}};
      try {
        const Witness w = build(members[i], members[i + 1], cfg.budget, cfg.prec);
        const bool good = verify_witness(w, cfg.budget, static_cast<unsigned>(kDefaultSamples), cfg.prec) &&
                          w.inner == members[i] && w.outer == members[i + 1];
        p["verified"] = good;
        p["sequence"] = w.seq.to_spec();
        ok += good ? 1 : 0;
      } catch (const Error& e) {
        p["verified"] = false;
        p["error"] = std::string(error_name(e.code()));
      }
      pairs.push_back(std::move(p));
    }
    r["pairs"] = pairs;
    r["verified"] = ok;
    r["total"] = members.size() - 1;
    return {r, ok + 1 == members.size() ? kExitOk : kExitError};
  });
}

inline Report cmd_classify(const std::string& spec, const std::string& space, const RunConfig& cfg) {
  return guarded("classify", [&]() -> Report {
    cfg.validate();
    const Sequence a = parse_sequence_text(spec);
    const SpaceId x = parse_space(space);
    const Verdict v = classify(a, x, cfg.budget, cfg.prec);
    Json r = detail::header("classify", cfg);
    r["space"] = to_string(x);
    r["sequence"] = a.to_spec();
    r["result"] = to_json(v);
    return {r, v.kind == VerdictKind::Undecided ? kExitUndecided : kExitOk};
  });
}

inline Report cmd_witness(const std::string& inner, const std::string& outer, const std::string& support,
                          const RunConfig& cfg) {
  return guarded("witness", [&]() -> Report {
    cfg.validate();
    const SpaceId x = parse_space(inner), y = parse_space(outer);
    const SupportSet a = support.empty() ? SupportSet::all() : parse_support(parse_json_text(support));
    const Witness w = make_witness(x, y, a, cfg.budget, cfg.prec);
    Json r = detail::header("witness", cfg);
    r["witness"] = to_json(w);
    r["verified"] = verify_witness(w, cfg.budget, static_cast<unsigned>(kDefaultSamples), cfg.prec);
    return {r, r["verified"].get<bool>() ? kExitOk : kExitError};
  });
}

inline Report cmd_approx(const std::string& target, const std::string& outer, const std::string& avoid,
                         const RunConfig& cfg) {
  return guarded("approx", [&]() -> Report {
    cfg.validate();
    if (!cfg.epsilon) throw Error(ErrorCode::InvalidArgument, "approx needs --epsilon");
    const Sequence t = parse_sequence_text(target);
    const SpaceId y = parse_space(outer), x = parse_space(avoid);
    const Approximation ap = approximate_with_avoider(t, *cfg.epsilon, y, x, cfg.budget, cfg.prec);
    Json r = detail::header("approx", cfg);
    r["epsilon"] = to_string(*cfg.epsilon);
    r["f"] = ap.f.to_spec();
    r["c"] = to_string(ap.c);
    r["distance_upper"] = to_string(ap.distance_upper);
    r["certificate"] = to_json(ap.certificate);
    r["certificate_ok"] = check_outside(ap.f, ap.certificate, cfg.prec);
    return {r, r["certificate_ok"].get<bool>() ? kExitOk : kExitError};
  });
}

inline Report cmd_basis(const std::string& inner, const std::string& outer, std::uint64_t count, const RunConfig& cfg) {
  return guarded("basis", [&]() -> Report {
    cfg.validate();
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "count must be at least 1");
    const SpaceableBasis b = make_basis(parse_space(inner), parse_space(outer), count, cfg.budget, cfg.prec);
    Json r = detail::header("basis", cfg);
    r["basis"] = to_json(b);
    return {r, kExitOk};
  });
}

inline Report cmd_recover(const std::string& f_spec, const std::string& inner, const std::string& outer,
                          std::uint64_t j, const RunConfig& cfg) {
  return guarded("recover", [&]() -> Report {
    cfg.validate();
    if (j == 0) throw Error(ErrorCode::InvalidArgument, "basis elements are numbered from 1");
    const Sequence f = parse_sequence_text(f_spec);
    SpaceableBasis b{parse_space(inner), parse_space(outer), cfg.budget, cfg.prec, {}};
    b.elements.emplace(j, basis_element(b.inner, b.outer, j, cfg.budget, cfg.prec));
    const ComplexInterval c = recover_coefficient(f, b, j, cfg.prec);
    Json r = detail::header("recover", cfg);
    r["j"] = j;
    r["coefficient"] = detail::interval_json(c);
    r["exact"] = c.is_exact();
    return {r, kExitOk};
  });
}

inline Report cmd_decompose(const std::string& spec, const std::string& space, const std::string& outer_axis,
                            const std::string& inner_axis, const RunConfig& cfg) {
  return guarded("decompose", [&]() -> Report {
    cfg.validate();
    const Sequence a = parse_sequence_text(spec);
    const SpaceId x = parse_space(space);
    const Grid g{detail::parse_grid_axis(outer_axis), detail::parse_grid_axis(inner_axis)};
    const auto rows = decompose_report(a, x, g, cfg.budget, cfg.prec);
    Json table = Json::array();
    for (const auto& row : rows) {
      Json e = to_json(row.result);
      e["outer"] = to_string(row.outer);
      e["inner"] = to_string(row.inner);
      e["family"] = to_string(row.family);
      table.push_back(std::move(e));
    }
    Json r = detail::header("decompose", cfg);
    r["space"] = to_string(x);
    r["rows"] = table;
    return {r, kExitOk};
  });
}

inline Report cmd_family(const std::string& spec, const std::string& family, const RunConfig& cfg) {
  return guarded("family", [&]() -> Report {
    cfg.validate();
    const Sequence a = parse_sequence_text(spec);
    const FamilyRef f = parse_family_ref(family);
    Json r = detail::header("family", cfg);
    r["family"] = to_string(f);
    r["result"] = to_json(closed_family_check(a, f, cfg.budget, cfg.prec));
    return {r, kExitOk};
  });
}

/// JSON is pretty-printed with sorted keys; text flattens the report into
/// "path: value" lines.
inline std::string render(const Report& r, Format format) {
  if (format == Format::Json) return r.body.dump(2) + "\n";
  std::string out;
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& path) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) walk(v, path.empty() ? k : path + "." + k);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
      for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], path + "[" + std::to_string(i) + "]");
    } else {
      out += path + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
  };
  walk(r.body, "");
  return out;
}

}  // namespace seqchain
