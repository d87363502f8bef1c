#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spca/cli.h"

namespace spca {
namespace {

using nlohmann::json;

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(::testing::TempDir()) / name;
  std::ofstream(path) << text;
  return path.string();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spca");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json strip_timings(json doc) {
  if (doc.contains("diagnostics")) doc["diagnostics"].erase("timings_ms");
  return doc;
}

const std::string kDiag = "3,0,0\n0,2,0\n0,0,1\n";

TEST(Cli, SolveDiagonal) {
  const auto path = write_temp("diag.csv", kDiag);
  const Result r = run_cli({"solve-spca", "--input", path, "--d", "1", "--s", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["solver"]["command"], "solve-spca");
  EXPECT_NEAR(doc["objective"].get<double>(), 3.0, 1e-12);
  EXPECT_EQ(doc["supports"], json::parse("[[1]]"));
  EXPECT_EQ(doc["components"]["rows"], 3);
  EXPECT_EQ(doc["components"]["cols"], 1);
  EXPECT_TRUE(doc["diagnostics"].contains("timings_ms"));
}

TEST(Cli, OracleMatchesSolver) {
  const auto path = write_temp("psd.csv",
                               "5,2,1,0\n2,4,1,1\n1,1,3,0.5\n0,1,0.5,2\n");
  for (const auto& [solve, oracle] :
       {std::pair{"solve-spca", "oracle-spca"}, std::pair{"solve-spca-ds", "oracle-spca-ds"}}) {
    const Result a = run_cli({solve, "--input", path, "--d", "2", "--s", "2"});
    const Result b = run_cli({oracle, "--input", path, "--d", "2", "--s", "2"});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const double x = json::parse(a.out)["objective"];
    const double y = json::parse(b.out)["objective"];
    EXPECT_NEAR(x, y, 1e-9 * (1 + y)) << solve;
  }
}

TEST(Cli, FactorRankOne) {
  const auto path = write_temp("r1.csv", "4,2\n2,1\n");
  const Result r = run_cli({"factor", "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["rank"], 1);
}

TEST(Cli, Samples) {
  const auto path = write_temp("q.csv", "1,-1\n0,0\n");
  const Result r = run_cli({"solve-spca", "--input", path, "--kind", "samples"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["objective"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, DeterministicApartFromTimings) {
  const auto path = write_temp("det.csv",
                               "5,2,1,0\n2,4,1,1\n1,1,3,0.5\n0,1,0.5,2\n");
  for (const char* cmd : {"solve-spca", "solve-spca-ds", "oracle-spca"}) {
    const Result a = run_cli({cmd, "--input", path, "--d", "2", "--s", "2"});
    const Result b =
        run_cli({cmd, "--input", path, "--d", "2", "--s", "2", "--serial"});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(strip_timings(json::parse(a.out)), strip_timings(json::parse(b.out))) << cmd;
  }
}

TEST(Cli, WritesOutputFile) {
  const auto path = write_temp("out_in.csv", kDiag);
  const auto out = (std::filesystem::path(::testing::TempDir()) / "out.json").string();
  const Result r = run_cli({"solve-spca", "--input", path, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(out);
  EXPECT_NEAR(json::parse(file)["objective"].get<double>(), 3.0, 1e-12);
}

TEST(Cli, ExitCodes) {
  const auto diag = write_temp("codes.csv", kDiag);
  EXPECT_EQ(run_cli({"solve-spca", "--input", diag, "--d", "2", "--s", "1"}).code, 2);
  EXPECT_EQ(run_cli({"solve-spca", "--input", diag, "--s", "4"}).code, 2);
  EXPECT_EQ(run_cli({"solve-spca"}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"solve-spca", "--input", diag, "--mode", "fast"}).code, 2);
  EXPECT_EQ(run_cli({"solve-spca", "--input", "/nonexistent.csv"}).code, 3);
  EXPECT_EQ(run_cli({"solve-spca", "--input", write_temp("asym.csv", "1,0.5\n0,1\n")}).code, 3);
  EXPECT_EQ(run_cli({"solve-spca", "--input", write_temp("rect.csv", "1,0,0\n0,1,0\n")}).code,
            3);
  EXPECT_EQ(run_cli({"solve-spca", "--input", write_temp("bad.csv", "1,a\n0,1\n")}).code, 3);
  EXPECT_EQ(run_cli({"factor", "--input", write_temp("neg.csv", "1,0\n0,-1\n")}).code, 3);
  EXPECT_EQ(run_cli({"solve-spca", "--input", diag, "--out", "/nonexistent/dir/x.json"}).code,
            3);
  EXPECT_EQ(cli::exit_code(ErrorCode::kNoConvergence), 4);
  EXPECT_EQ(cli::exit_code(ErrorCode::kTooLarge), 2);
}

TEST(Cli, BenchAgrees) {
  const auto path = write_temp("bench.csv",
                               "5,2,1,0\n2,4,1,1\n1,1,3,0.5\n0,1,0.5,2\n");
  for (const char* problem : {"spca", "spca-ds"}) {
    const Result r =
        run_cli({"bench", "--input", path, "--d", "2", "--s", "2", "--problem", problem});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["agree"].get<bool>());
  }
}

}  // namespace
}  // namespace spca
