#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ufpot/commands.hpp"

using namespace ufpot;
namespace fs = std::filesystem;

namespace {

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ufpot_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CommandsTest, RunSmallTracePasses) {
  cli::run_options o;
  o.trace_path = write("t.trace", "n 2\nu 0 1\nf 1\n");
  o.out_dir = (dir_ / "out").string();
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_run(o, out, err), 0) << out.str() << err.str();

  const auto csv = slurp(dir_ / "out" / "finds.csv");
  std::istringstream lines(csv);
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("step,path_nodes,path_edges,SQRT_delta_phi,SQRT_events,SQRT_verdict", 0), 0u);
  std::size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 3u);

  const auto js = nlohmann::json::parse(slurp(dir_ / "out" / "report.json"));
  EXPECT_EQ(js["schema_version"], 1);
  EXPECT_EQ(js["passed"], true);
  EXPECT_EQ(js["verdicts"]["lemma1"]["status"], "pass");
}

TEST_F(CommandsTest, RunExitCodes) {
  std::ostringstream out, err;
  cli::run_options missing;
  missing.trace_path = (dir_ / "nope.trace").string();
  EXPECT_EQ(cli::cmd_run(missing, out, err), 2);

  cli::run_options bad;
  bad.trace_path = write("bad.trace", "n 2\nu 0 1\nx 1 2\n");
  bad.out_dir = dir_.string();
  std::ostringstream err2;
  EXPECT_EQ(cli::cmd_run(bad, out, err2), 2);
  EXPECT_NE(err2.str().find("line 3"), std::string::npos);

  cli::run_options badvariant;
  badvariant.trace_path = write("ok.trace", "n 2\nu 0 1\n");
  badvariant.variant_name = "weight";
  EXPECT_EQ(cli::cmd_run(badvariant, out, err), 2);

  cli::run_options badconst = badvariant;
  badconst.variant_name = "size";
  badconst.constants = {"sqrt.slope"};
  EXPECT_EQ(cli::cmd_run(badconst, out, err), 2);
}

TEST_F(CommandsTest, CorruptedConstantNamesTheCriterion) {
  cli::gen_options g;
  g.n = 200;
  g.m = 2000;
  g.seed = 3;
  g.output = (dir_ / "r.trace").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_gen(g, out, err), 0);

  cli::run_options o;
  o.trace_path = g.output;
  o.out_dir = dir_.string();
  o.constants = {"sqrt.run_bound=0.1"};
  std::ostringstream run_out;
  EXPECT_EQ(cli::cmd_run(o, run_out, err), 1);
  EXPECT_NE(run_out.str().find("FAIL SQRT.run_increase"), std::string::npos) << run_out.str();
}

TEST_F(CommandsTest, RunSamples) {
  std::ostringstream out, err;
  for (const char* name : {"heap15_tree.trace", "binomial16.trace"}) {
    cli::run_options o;
    o.trace_path = std::string(UFPOT_SAMPLES_DIR) + "/" + name;
    o.out_dir = dir_.string();
    EXPECT_EQ(cli::cmd_run(o, out, err), 0) << name << "\n" << out.str() << err.str();
  }
}

TEST_F(CommandsTest, GenIsDeterministic) {
  cli::gen_options g;
  g.n = 50;
  g.m = 100;
  g.seed = 9;
  std::ostringstream a, b, err;
  ASSERT_EQ(cli::cmd_gen(g, a, err), 0);
  ASSERT_EQ(cli::cmd_gen(g, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(parse_trace(a.str()), gen_random(50, 100, 9, 0.5));

  g.generator = "binomial";
  g.k = 3;
  std::ostringstream c;
  ASSERT_EQ(cli::cmd_gen(g, c, err), 0);
  EXPECT_EQ(parse_trace(c.str()), gen_binomial(3, 1));

  g.generator = "zipf";
  EXPECT_EQ(cli::cmd_gen(g, c, err), 2);
}

TEST_F(CommandsTest, Bounds) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_bounds({1, 16, 65536}, out, err), 0);
  const auto s = out.str();
  EXPECT_NE(s.find("log*"), std::string::npos);
  EXPECT_NE(s.find("alpha"), std::string::npos);
  std::istringstream lines(s);
  std::string header, row1, row16;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row16);
  std::istringstream r1(row1);
  std::string n;
  double l2 = -1, ll2 = -1;
  int ls = -1, lh = -1, lh2 = -1, a = -1;
  r1 >> n >> l2 >> ll2 >> ls >> lh >> lh2 >> a;
  EXPECT_EQ(n, "1");
  EXPECT_EQ(l2 + ll2 + ls + lh + lh2 + a, 0.0);
  std::istringstream r16(row16);
  r16 >> n >> l2 >> ll2 >> ls;
  EXPECT_EQ(ls, 3);
}

TEST_F(CommandsTest, CheckLemmas) {
  std::ostringstream out, err;
  cli::check_lemmas_options o;
  o.grid_seed = 1;
  o.random_points = 100;
  EXPECT_EQ(cli::cmd_check_lemmas(o, out, err), 0) << out.str();
  EXPECT_NE(out.str().find("failures 0"), std::string::npos);

  std::ostringstream empty;
  o.empty_grid = true;
  EXPECT_EQ(cli::cmd_check_lemmas(o, empty, err), 0);
  EXPECT_NE(empty.str().find("warning"), std::string::npos);
  EXPECT_NE(empty.str().find("checked 0"), std::string::npos);
}

TEST_F(CommandsTest, BenchSingleRepeat) {
  cli::bench_options o;
  o.n = 1000;
  o.m = 5000;
  o.repeats = 1;
  o.seed = 1;
  o.variants = {"all"};
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_bench(o, out, err), 0);
  EXPECT_NE(out.str().find("seconds"), std::string::npos);
  EXPECT_EQ(out.str().find("median"), std::string::npos);
  EXPECT_NE(out.str().find("rank-nocompress"), std::string::npos);

  o.workload = "binomial";
  o.k = 8;
  o.variants = {"size"};
  EXPECT_EQ(cli::cmd_bench(o, out, err), 0);

  o.workload = "zipf";
  EXPECT_EQ(cli::cmd_bench(o, out, err), 2);
}

TEST(SeedFromEnv, ReadsVariable) {
  ::setenv("UFPOT_SEED", "77", 1);
  EXPECT_EQ(cli::seed_from_env(), 77u);
  ::setenv("UFPOT_SEED", "junk", 1);
  EXPECT_EQ(cli::seed_from_env(5), 5u);
  ::unsetenv("UFPOT_SEED");
  EXPECT_EQ(cli::seed_from_env(), cli::default_seed);
}
