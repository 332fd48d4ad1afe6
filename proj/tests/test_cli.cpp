#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fwdis/cli.hpp"

#ifndef FWDIS_DATA_DIR
#error "FWDIS_DATA_DIR must point at the sample instances"
#endif

namespace fwdis {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "fwdis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (fs::path(FWDIS_DATA_DIR) / name).string(); }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("fwdis_cli_" + name);
  fs::remove_all(p);
  return p;
}

TEST(CliSolve, CutInstanceWritesTraceAndSummary) {
  const fs::path out = scratch("solve");
  const CliResult r = run({"solve", "--objective", data("cut2.table"), "--region", "box", "--iters", "1000", "--out",
                     out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("beta "), std::string::npos);
  EXPECT_NE(r.out.find("best_f "), std::string::npos);
  const auto summary = io::read_json_file(out / "summary.json");
  EXPECT_GE(summary["final_f"].get<double>(), 0.25 - summary["beta"].get<double>());
  EXPECT_GE(summary["best_f"].get<double>(), summary["final_f"].get<double>());
  std::ifstream csv(out / "trace.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, io::kTraceHeader);
}

TEST(CliSolve, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"solve", "--objective", data("cut2.table"), "--iters", "0"}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("cut2.table")}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("cut2.table"), "--iters", "5", "--epsilon", "0.1"}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("missing.table"), "--iters", "5"}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("invalid_quadratic.json"), "--iters", "5"}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("cut2.table"), "--iters", "5", "--start", "middle"}).code, 2);
  EXPECT_EQ(run({"solve", "--objective", data("cut2.table"), "--iters", "5", "--region", data("cover2.json")}).code,
            2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliSolve, EpsilonModeChoosesT) {
  const CliResult ok = run({"solve", "--objective", data("cut2.table"), "--epsilon", "0.05", "--cap", "100000"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto choice = iterations_for_epsilon(2, 4.0, 0.05, 100000);
  ASSERT_TRUE(choice.reached);
  EXPECT_NE(ok.out.find("iterations " + std::to_string(choice.iterations)), std::string::npos);
  EXPECT_EQ(ok.err.find("warning"), std::string::npos);

  const CliResult capped = run({"solve", "--objective", data("cut2.table"), "--epsilon", "0.05", "--cap", "1000"});
  ASSERT_EQ(capped.code, 0);
  EXPECT_NE(capped.err.find("warning"), std::string::npos);
  EXPECT_NE(capped.out.find("iterations 1000"), std::string::npos);
}

TEST(CliSolve, MinInfNormStartOnCoveringRegion) {
  const CliResult r = run({"solve", "--objective", data("cross_quadratic.json"), "--region", data("cover2.json"), "--iters",
                     "200", "--start", "mininf"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(CliSolve, ConfigRoundTripReproducesTrace) {
  const fs::path a = scratch("rt_a"), b = scratch("rt_b");
  ASSERT_EQ(run({"solve", "--objective", data("quadratic6.json"), "--region", data("halfspaces6.json"), "--iters",
                 "300", "--out", a.string()})
                .code,
            0);
  ASSERT_EQ(run({"solve", "--config", (a / "config.json").string(), "--out", b.string()}).code, 0);
  EXPECT_EQ(io::read_file(a / "trace.csv"), io::read_file(b / "trace.csv"));
  EXPECT_EQ(io::read_json_file(a / "config.json")["iters"], 300);
}

TEST(CliVerify, CutInstancePasses) {
  const fs::path out = scratch("verify");
  const CliResult r = run({"verify", "--objective", data("cut2.table"), "--iters", "100", "--seed", "1", "--out",
                     out.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("result=FAIL"), std::string::npos);
  for (const char* check : {"finite-difference", "dr-inequality", "gradient-antitone", "lmo-optimality",
                            "lemma1-coordinate-bound", "lemma2-join-bound", "lyapunov-increment",
                            "quarter-certificate"})
    EXPECT_NE(r.out.find(std::string("check=") + check), std::string::npos) << check;
  EXPECT_TRUE(fs::exists(out / "report.txt"));
}

TEST(CliVerify, InvalidQuadraticFailsDrCheck) {
  const CliResult r = run({"verify", "--objective", data("invalid_quadratic.json"), "--iters", "100", "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("check=dr-inequality instance=invalid_quadratic/box"), std::string::npos);
  const auto line_start = r.out.find("check=dr-inequality");
  const auto line = r.out.substr(line_start, r.out.find('\n', line_start) - line_start);
  EXPECT_NE(line.find("result=FAIL"), std::string::npos);
}

TEST(CliVerify, SixDimensionalHalfspacesSkipLyapunov) {
  const CliResult r = run({"verify", "--objective", data("quadratic6.json"), "--region", data("halfspaces6.json"),
                     "--iters", "500", "--seed", "3", "--resolution", "0.1", "--skip-lyapunov"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("lyapunov-increment"), std::string::npos);
}

TEST(CliVerify, RejectsOversizedAndUnseeded) {
  const fs::path dir = scratch("big");
  fs::create_directories(dir);
  {
    std::ofstream q(dir / "q7.json");
    q << R"({"kind":"quadratic","H":[[-1,0,0,0,0,0,0],[0,-1,0,0,0,0,0],[0,0,-1,0,0,0,0],[0,0,0,-1,0,0,0],)"
      << R"([0,0,0,0,-1,0,0],[0,0,0,0,0,-1,0],[0,0,0,0,0,0,-1]],"h":[1,1,1,1,1,1,1]})";
  }
  const CliResult big = run({"verify", "--objective", (dir / "q7.json").string(), "--iters", "10", "--seed", "1"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("n <= 6"), std::string::npos);
  EXPECT_EQ(run({"verify", "--objective", data("cut2.table"), "--iters", "10"}).code, 2);
}

TEST(CliCompare, SeededQuadraticsAreDeterministic) {
  const std::vector<std::string> args{"compare", "--dim", "4", "--seeds", "1..10", "--seed", "7",
                                      "--iters", "200", "--family", "mixed"};
  const CliResult a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream table(a.out);
  std::string line;
  std::getline(table, line);
  EXPECT_EQ(line, "instance,n,fw_dis_final,fw_dis_best,classic_final,f_star,fw_dis_ratio,classic_ratio,beta");
  int rows = 0;
  while (std::getline(table, line)) {
    ++rows;
    EXPECT_EQ(line.find("n/a"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 10);
}

TEST(CliCompare, RatiosUnavailableWithoutOracle) {
  const CliResult r = run({"compare", "--dim", "8", "--seeds", "1..2", "--seed", "1", "--iters", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream table(r.out);
  std::string line;
  std::getline(table, line);
  while (std::getline(table, line)) EXPECT_NE(line.find(",n/a,n/a,n/a,"), std::string::npos) << line;
}

TEST(CliCompare, SingleInstanceFromFile) {
  const CliResult r = run({"compare", "--objective", data("cut2.table"), "--iters", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cut2/box,2,"), std::string::npos);
}

}  // namespace
}  // namespace fwdis
