// seqchain: certificates, witnesses and constructions for the sequence-space chain.

#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "seqchain/cli.hpp"

namespace {

/// Inline JSON if it starts with '{', stdin for "-", otherwise a file path.
std::string read_spec(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(arg);
  if (!in) throw seqchain::Error(seqchain::ErrorCode::ParseError, "cannot read spec file '" + arg + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace seqchain;
  CLI::App app{"Membership certificates and witnesses for the chain A^inf(D) < ... < C^N0"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string epsilon, format = "json", out;
  app.add_option("--budget", cfg.budget, "index budget")->check(CLI::PositiveNumber);
  app.add_option("--prec", cfg.prec, "working precision in bits")->check(CLI::Range(8u, 1u << 20));
  app.add_option("--epsilon", epsilon, "rational tolerance num/den");
  app.add_option("--seed", cfg.seed, "seed recorded in the report");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out, "write the report here instead of stdout");

  bool verify = false;
  auto* chain_cmd = app.add_subcommand("chain", "list the chain (a = 1, b = 2); --verify checks all adjacent witnesses");
  chain_cmd->add_flag("--verify", verify);

  std::string seq, space, inner, outer, avoid, support, family, grid_outer = "1", grid_inner;
  std::uint64_t count = 1, j = 1;

  auto* classify_cmd = app.add_subcommand("classify", "certify membership of a sequence in a space");
  classify_cmd->add_option("seq", seq, "sequence spec (inline JSON, file, or -)")->required();
  classify_cmd->add_option("space", space)->required();

  auto* witness_cmd = app.add_subcommand("witness", "build a separating sequence for inner < outer");
  witness_cmd->add_option("--inner", inner)->required();
  witness_cmd->add_option("--outer", outer)->required();
  witness_cmd->add_option("--support", support, "support spec JSON (default all)");

  auto* approx_cmd = app.add_subcommand("approx", "approximate a target in outer by an element outside avoid");
  approx_cmd->add_option("--target", seq)->required();
  approx_cmd->add_option("--outer", outer)->required();
  approx_cmd->add_option("--avoid", avoid)->required();

  auto* basis_cmd = app.add_subcommand("basis", "disjointly supported basis for spaceability");
  basis_cmd->add_option("--inner", inner)->required();
  basis_cmd->add_option("--outer", outer)->required();
  basis_cmd->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* recover_cmd = app.add_subcommand("recover", "recover the j-th basis coefficient of f");
  recover_cmd->add_option("--f", seq)->required();
  recover_cmd->add_option("--inner", inner)->required();
  recover_cmd->add_option("--outer", outer)->required();
  recover_cmd->add_option("--j", j)->check(CLI::PositiveNumber);

  auto* decompose_cmd = app.add_subcommand("decompose", "closed-family table over a parameter grid");
  decompose_cmd->add_option("seq", seq)->required();
  decompose_cmd->add_option("space", space)->required();
  decompose_cmd->add_option("--grid-outer", grid_outer, "k, n or j values, e.g. 1..4");
  decompose_cmd->add_option("--grid-inner", grid_inner, "M, N or k values, e.g. 1..10")->required();

  auto* family_cmd = app.add_subcommand("family", "check one closed family, e.g. FMk:1:1 or psum:2:1");
  family_cmd->add_option("seq", seq)->required();
  family_cmd->add_option("family", family)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  cfg.format = format == "text" ? Format::Text : Format::Json;

  Report report;
  try {
    if (!epsilon.empty()) cfg.epsilon = parse_rational(epsilon);
    if (*chain_cmd) report = cmd_chain(verify, cfg);
    else if (*classify_cmd) report = cmd_classify(read_spec(seq), space, cfg);
    else if (*witness_cmd) report = cmd_witness(inner, outer, support.empty() ? "" : read_spec(support), cfg);
    else if (*approx_cmd) report = cmd_approx(read_spec(seq), outer, avoid, cfg);
    else if (*basis_cmd) report = cmd_basis(inner, outer, count, cfg);
    else if (*recover_cmd) report = cmd_recover(read_spec(seq), inner, outer, j, cfg);
    else if (*decompose_cmd) report = cmd_decompose(read_spec(seq), space, grid_outer, grid_inner, cfg);
    else if (*family_cmd) report = cmd_family(read_spec(seq), family, cfg);
  } catch (const Error& e) {
    report = error_report(app.get_subcommands().front()->get_name().c_str(), e);
  }

  const std::string text = render(report, cfg.format);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    f << text;
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return kExitError;
    }
  }
  if (report.exit_code == kExitError && report.body.contains("error"))
    std::cerr << report.body["error"]["code"].get<std::string>() << ": " << report.body["error"]["message"].get<std::string>()
              << "\n";
  return report.exit_code;
}
