#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(CORRLAB_EXE) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(CORRLAB_FIXTURES) + "/" + name;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, AnalyzeBell) {
  const Outcome r = run("analyze " + fixture("bell.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "analyze");
  EXPECT_EQ(j["input"]["form"], "matrix");
  const auto& o = j["outputs"];
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(o["singular_values"][i].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(o["S_A"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(o["mutual_info"].get<double>(), 2.0, 1e-12);
  EXPECT_TRUE(j.contains("tolerances"));
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, AnalyzeProductAndXState) {
  const Outcome p = run("analyze " + fixture("product.json"));
  ASSERT_EQ(p.code, 0);
  const auto jp = nlohmann::json::parse(p.out);
  for (const auto& row : jp["outputs"]["state"]["C"]) {
    for (const auto& v : row) EXPECT_EQ(v.get<double>(), 0.0);
  }
  const Outcome x = run("analyze " + fixture("xstate_jx01.json"));
  ASSERT_EQ(x.code, 0);
  const auto jx = nlohmann::json::parse(x.out);
  EXPECT_NEAR(jx["outputs"]["state"]["C"][2][2].get<double>(), -0.3125, 1e-15);
}

TEST(Cli, OptimizeQuadExactMatchesOracle) {
  const Outcome e = run("optimize --entropy quad --method exact " + fixture("qutrit.json"));
  const Outcome o = run("optimize --entropy quad --method oracle " + fixture("qutrit.json"));
  ASSERT_EQ(e.code, 0);
  ASSERT_EQ(o.code, 0);
  const double se = nlohmann::json::parse(e.out)["outputs"]["s_min"].get<double>();
  const double so = nlohmann::json::parse(o.out)["outputs"]["s_min"].get<double>();
  EXPECT_NEAR(se, so, 1e-8);
}

TEST(Cli, OptimizePureStateIsZero) {
  for (const char* m : {"oracle", "exact"}) {
    const Outcome r = run(std::string("optimize --entropy quad --method ") + m + " " +
                      fixture("bell.json"));
    ASSERT_EQ(r.code, 0) << m;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["outputs"]["s_min"].get<double>(), 0.0, 1e-10);
  }
}

TEST(Cli, OptimizeErrors) {
  EXPECT_EQ(run("optimize --entropy vn --method exact " + fixture("bell.json")).code, 2);
  EXPECT_EQ(run("optimize --entropy renyi " + fixture("bell.json")).code, 2);
  // pure marginals make the von Neumann Hessian singular
  EXPECT_EQ(run("optimize --entropy vn --method weak " + fixture("pure_marginal.json")).code, 4);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze " + fixture("nonpositive.json")).code, 3);
  EXPECT_EQ(run("analyze " + fixture("malformed.json")).code, 2);
  EXPECT_EQ(run("analyze " + fixture("does_not_exist.json")).code, 2);
  EXPECT_EQ(run("analyze").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("--version").code, 0);
}

TEST(Cli, DiscordBoth) {
  const Outcome r = run("discord " + fixture("xstate_jx01.json"));
  ASSERT_EQ(r.code, 0);
  const auto o = nlohmann::json::parse(r.out)["outputs"];
  EXPECT_NEAR(o["exact"]["discord"].get<double>(), 0.011591315603966534, 1e-9);
  EXPECT_NEAR(o["weak"]["discord"].get<double>(), 0.017117185916967537, 1e-12);
  EXPECT_EQ(o["exact"]["method"], "oracle");
  EXPECT_EQ(o["weak"]["method"], "weak_correlation");
}

TEST(Cli, ProfileHalfTurnSymmetry) {
  const Outcome r = run("profile --steps 36 " + fixture("xstate_jx0325.json"));
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 37u);
  EXPECT_EQ(rows[0][0], "theta");
  ASSERT_EQ(rows[0].size(), 6u);
  for (size_t i = 1; i <= 18; ++i) {
    for (size_t c = 1; c < 6; ++c) {
      EXPECT_NEAR(std::stod(rows[i][c]), std::stod(rows[i + 18][c]), 1e-11) << i << "," << c;
    }
  }
}

TEST(Cli, ProfileZeroCorrelation) {
  const Outcome r = run("profile --steps 12 " + fixture("product.json"));
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  for (size_t i = 1; i < rows.size(); ++i) {
    for (size_t c = 1; c < 4; ++c) EXPECT_EQ(rows[i][c], "0") << i << "," << c;
  }
}

TEST(Cli, ProfileRequiresTwoQubits) {
  EXPECT_EQ(run("profile " + fixture("qutrit.json")).code, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "scan-sectors --grid 6 --oracle-grid 200";
  const Outcome a = run(args);
  const Outcome b = run("--jobs 3 " + args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv(a.out);
  ASSERT_EQ(rows.size(), 37u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"r_A", "J_x", "sector"}));
  EXPECT_EQ(run("profile --steps 20 " + fixture("xstate_jx05.json")).out,
            run("profile --steps 20 " + fixture("xstate_jx05.json")).out);
}

TEST(Cli, EllipsoidCsv) {
  const Outcome r = run("ellipsoid --samples 10 " + fixture("qutrit.json"));
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0].size(), 12u);
  EXPECT_EQ(rows[0][3], "sign");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "corrlab_cli_out.csv";
  std::remove(path.c_str());
  const Outcome r = run("--out " + path + " ellipsoid --samples 3 " + fixture("bell.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}
