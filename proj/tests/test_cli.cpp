#include <gtest/gtest.h>

#include <fstream>

#include "cli_run.hpp"
#include "seqchain/cli.hpp"

using namespace seqchain;
using namespace seqchain::cli_test;

namespace {

const std::string kNat = R"({"kind":"family","name":"nat"})";
const std::string kProp28 = R"({"kind":"family","name":"prop28"})";
const std::string kCancel =
    R"({"kind":"combine","terms":[["1","0",{"kind":"family","name":"nat"}],["-1","0",{"kind":"family","name":"nat"}]]})";

}  // namespace

TEST(Cli, ClassifyOut) {
  const CliRun r = run({"classify", kNat, "linf"});
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], "seqchain/1");
  EXPECT_EQ(j["result"]["verdict"], "out");
  EXPECT_EQ(j["result"]["certificate"]["shape"], "Unbounded");
}

TEST(Cli, UndecidedExitsWithTwo) {
  const CliRun r = run({"classify", kCancel, "lp:1"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(Json::parse(r.out)["result"]["verdict"], "undecided");
}

TEST(Cli, ParseErrorReportsTheByte) {
  const CliRun r = run({"classify", R"({"kind":"finite","entries":[[0,"1/2")", "linf"});
  EXPECT_EQ(r.status, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["code"], "ParseError");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("byte"), std::string::npos);
  EXPECT_EQ(run({"classify", kNat, "lp:0"}).status, 1);
  EXPECT_EQ(run({"classify", kNat, "nowhere"}).status, 1);
  EXPECT_EQ(run({"bogus"}).status, 1);
}

TEST(Cli, ChainVerify) {
  const CliRun r = run({"chain", "--verify"});
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verified"], 9);
  EXPECT_EQ(j["members"].size(), 10u);
  EXPECT_EQ(j["members"][0], "ainf");
  EXPECT_EQ(j["members"][9], "cn0");
}

TEST(Cli, ChainRejectsAForgedBuilder) {
  RunConfig cfg;
  cfg.budget = 512;
  // relabel every witness one step too low
  const WitnessBuilder forged = [](const SpaceId& x, const SpaceId& y, std::uint64_t budget, unsigned prec) {
    Witness w = default_witness(x, y, budget, prec);
    if (x.tag == SpaceTag::Linf) w.seq = const_one();
    return w;
  };
  const Report r = cmd_chain(true, cfg, forged);
  EXPECT_EQ(r.exit_code, kExitError);
  EXPECT_EQ(r.body["verified"], 8);
  EXPECT_EQ(cmd_chain(true, cfg).exit_code, kExitOk);
}

TEST(Cli, Approx) {
  const CliRun r = run({"approx", "--target", R"({"kind":"finite","entries":[[0,"1/1"]]})", "--outer", "c0", "--avoid", "lp:1",
                     "--epsilon", "1/4", "--budget", "256"});
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["certificate_ok"].get<bool>());
  EXPECT_LT(parse_rational(j["distance_upper"].get<std::string>()), Rational(1, 4));
  EXPECT_EQ(run({"approx", "--target", kNat, "--outer", "c0", "--avoid", "lp:1"}).status, 1);
}

TEST(Cli, BasisRecoverDecomposeFamily) {
  const CliRun b = run({"basis", "--inner", "lp:1", "--outer", "c0", "--count", "3", "--budget", "512"});
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(Json::parse(b.out)["basis"]["elements"].size(), 3u);

  const CliRun rc = run({"recover", "--f", R"({"kind":"finite","entries":[[0,"3/1","1/2"]]})", "--inner", "lp:1", "--outer",
                      "c0", "--j", "1", "--budget", "512"});
  ASSERT_EQ(rc.status, 0);
  const Json c = Json::parse(rc.out);
  EXPECT_TRUE(c["exact"].get<bool>());
  // y_1(0) = 1/2 for the ℓ¹ gap sequence
  EXPECT_EQ(c["coefficient"]["re"][0], "6/1");
  EXPECT_EQ(c["coefficient"]["im"][0], "1/1");

  const CliRun d = run({"decompose", kProp28, "ainf", "--grid-inner", "1..10", "--budget", "512"});
  ASSERT_EQ(d.status, 0);
  const Json table = Json::parse(d.out);
  std::vector<std::uint64_t> idx;
  for (const auto& row : table["rows"]) idx.push_back(row["n"].get<std::uint64_t>());
  EXPECT_EQ(idx, (std::vector<std::uint64_t>{2, 8, 16, 32, 32, 64, 64, 128, 128, 128}));
  EXPECT_EQ(run({"decompose", kProp28, "cn0", "--grid-inner", "1"}).status, 1);

  const CliRun f = run({"family", kProp28, "FMk:1:1"});
  ASSERT_EQ(f.status, 0);
  EXPECT_EQ(Json::parse(f.out)["result"]["result"], "ViolatedAt");
}

TEST(Cli, TextFormatAndOutFile) {
  const CliRun t = run({"classify", kNat, "hd", "--format", "text"});
  ASSERT_EQ(t.status, 0);
  EXPECT_NE(t.out.find("result.verdict: in\n"), std::string::npos);
  EXPECT_NE(t.out.find("schema: seqchain/1\n"), std::string::npos);

  const std::string path = ::testing::TempDir() + "seqchain_out.json";
  const CliRun o = run({"classify", kNat, "linf", "--out", path});
  ASSERT_EQ(o.status, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  const std::string body{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  EXPECT_EQ(body, run({"classify", kNat, "linf"}).out);
}

TEST(Cli, ByteIdenticalReruns) {
  const std::vector<std::vector<std::string>> cmds = {
      {"chain", "--verify", "--budget", "512"},
      {"classify", kProp28, "ainf", "--seed", "7"},
      {"witness", "--inner", "hd", "--outer", "cn0", "--support", R"({"kind":"arith","start":0,"step":2})"},
      {"approx", "--target", kProp28, "--outer", "cap-lp:0", "--avoid", "ainf", "--epsilon", "1/64", "--budget", "512"},
      {"basis", "--inner", "c0", "--outer", "linf", "--count", "2", "--budget", "256"},
      {"recover", "--f", kNat, "--inner", "linf", "--outer", "hd", "--j", "2", "--budget", "256"},
      {"decompose", kNat, "hd", "--grid-outer", "1..2", "--grid-inner", "1"},
      {"family", kNat, "Fkj:1:3", "--format", "text"}};
  for (const auto& c : cmds) {
    const CliRun a = run(c), b = run(c);
    EXPECT_EQ(a.status, b.status) << c[0];
    EXPECT_FALSE(a.out.empty()) << c[0];
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Cli, InProcessReportsMatchTheBinary) {
  RunConfig cfg;
  cfg.budget = 256;
  const Report r = cmd_classify(kNat, "linf", cfg);
  EXPECT_EQ(render(r, Format::Json), run({"classify", kNat, "linf", "--budget", "256"}).out);
  cfg.prec = 4;
  EXPECT_EQ(cmd_classify(kNat, "linf", cfg).exit_code, kExitError);
  EXPECT_EQ(detail::parse_grid_axis("1..3,5/2"), (std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(5, 2)}));
  EXPECT_THROW(detail::parse_grid_axis("3..1"), Error);
}
