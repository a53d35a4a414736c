#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace assocnorm;
using namespace assocnorm::cli;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "assocnorm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = execute(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("assocnorm_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "run.ini";
  std::ofstream(p) << body;
  return p.string();
}

const char* kLinear =
    "[pair]\np = 2\n\n[v0]\nkind = unit\n\n[v1]\nkind = power\ngamma = 1\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, RoundTrip) {
  RunConfig c;
  c.p = 1.5;
  c.v1.kind = "exp_power";
  c.v1.gamma = 0.3;
  c.v1.beta = -0.1;
  c.quad.rel_tol = 1e-9;
  c.N = 6;
  c.corpus.seed = 99;
  c.suites = {"hardy", "identity"};
  c.output_dir = "somewhere";
  const std::string text = emit_config(c);
  const RunConfig d = parse_config(text);
  EXPECT_EQ(emit_config(d), text);
  EXPECT_EQ(d.p, 1.5);
  EXPECT_EQ(d.v1.beta, -0.1);
  EXPECT_EQ(d.suites.size(), 2u);
}

TEST(Config, InlineComments) {
  const RunConfig c = parse_config("[pair]\np = 3   ; exponent\n# whole line\n[v1]\nkind = power # x^g\ngamma = 2\n");
  EXPECT_EQ(c.p, 3.0);
  EXPECT_EQ(c.v1.kind, "power");
  EXPECT_EQ(c.v1.gamma, 2.0);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("[pair]\np = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[pair]\nq = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("[bogus]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nN = zero\n"), ConfigError);
  EXPECT_THROW(parse_config("[v0]\nkind = spline\n"), ConfigError);
  EXPECT_THROW(parse_config("[verify]\nsuites = hardy,nope\n"), ConfigError);
}

TEST(Csv, EscapesAndFullPrecision) {
  CsvTable t({"a", "b"});
  t.add({std::string("x,y"), 0.1});
  EXPECT_EQ(t.str(), "a,b\n\"x,y\",0.10000000000000001\n");
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
}

TEST(Cli, BadConfigIsUsageError) {
  const auto dir = scratch("bad");
  const auto cfg = write_config(dir, "[pair]\np = 0.5\n");
  EXPECT_EQ(run({"grid", "--config", cfg}), 2);
  EXPECT_EQ(run({"grid", "--config", (dir / "missing.ini").string()}), 2);
}

TEST(Cli, EquilibriumRow) {
  const auto dir = scratch("eq");
  const auto cfg = write_config(dir, kLinear);
  std::string out;
  ASSERT_EQ(run({"equilibrium", "--config", cfg, "--t", "1.0", "--out", dir.string()}, &out), 0);
  const auto rows = read_csv((dir / "equilibrium.csv").string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "t");
  EXPECT_NEAR(std::stod(rows[1][1]), 0.6909830056, 1e-9);
  EXPECT_NEAR(std::stod(rows[1][2]), 1.8090169944, 1e-9);
}

TEST(Cli, VerifyIdentityPassesAndIsDeterministic) {
  const auto dir = scratch("verify");
  const auto cfg = write_config(dir, kLinear);
  ASSERT_EQ(run({"verify", "--config", cfg, "--suite", "identity", "--out", dir.string()}), 0);
  const std::string first = slurp(dir / "verify.csv");
  ASSERT_EQ(run({"verify", "--config", cfg, "--suite", "identity", "--out", dir.string()}), 0);
  EXPECT_EQ(slurp(dir / "verify.csv"), first);
  EXPECT_EQ(first.substr(0, first.find('\n')), "suite,check,metric,threshold,passed,detail");
  EXPECT_EQ(run({"report", "--config", cfg, "--out", dir.string()}), 0);
  EXPECT_TRUE(fs::exists(dir / "report.txt"));
}

TEST(Cli, SuiteFailureExitsOne) {
  const auto dir = scratch("fail");
  // unit weights violate the two-sided divergence condition; suites needing t < 1/2 fail
  const auto cfg = write_config(dir, "[pair]\np = 2\nrequire_s6 = false\n");
  EXPECT_EQ(run({"verify", "--config", cfg, "--suite", "embedding", "--out", dir.string()}), 1);
}

TEST(Cli, NormCsvSchema) {
  const auto dir = scratch("norm");
  const auto cfg = write_config(dir, kLinear);
  ASSERT_EQ(run({"norm", "--config", cfg, "--g", "indicator:1,2", "--kind", "weak", "--out",
                 dir.string()}),
            0);
  const auto rows = read_csv((dir / "norms.csv").string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].size(), 8u);
  EXPECT_EQ(rows[1][1], "weak");
  EXPECT_EQ(run({"norm", "--config", cfg, "--g", "wiggle:1"}), 2);
}

TEST(Cli, FunctionSpecs) {
  RunConfig c;
  EXPECT_DOUBLE_EQ(parse_function("hat:1,2,3", c)(2.0), 1.0);
  EXPECT_DOUBLE_EQ(parse_function("indicator:1,2,3", c)(1.5), 3.0);
  EXPECT_EQ(parse_function("gcorpus:0", c).label(), g_corpus()[0].label());
  EXPECT_THROW(parse_function("hat:1,2", c), ConfigError);
  EXPECT_THROW(parse_function("hat:3,2,1", c), ConfigError);
  EXPECT_THROW(parse_function("gcorpus:99", c), ConfigError);
}
