// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rcm/cli.h"
#include "rcm/rpm.h"

namespace rcm {
namespace {

namespace fs = std::filesystem;

const std::string kData = RCM_TESTDATA_DIR;
const std::string kTiny = kData + "/tiny.json";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rcm");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = CliMain(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rcm_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, SolveTiny) {
  const CliRun r = Cli({"solve", "--scenario", kTiny, "--solver", "obg"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("solution {\"0\":0,\"1\":2,\"2\":4}\n"), std::string::npos);
  EXPECT_NE(r.out.find("trajectories {p0,p2,p4}\n"), std::string::npos);
  EXPECT_NE(r.out.find("coverage 6.0\n"), std::string::npos);
  EXPECT_NE(r.out.find("f_evals 6\n"), std::string::npos);
  EXPECT_EQ(r.out.find("ls_iterations"), std::string::npos);

  const CliRun ls = Cli({"solve", "--scenario", kTiny, "--solver", "ls-a2-i2"});
  ASSERT_EQ(ls.code, 0) << ls.err;
  EXPECT_NE(ls.out.find("ls_iterations 0\n"), std::string::npos);
}

TEST(CliTest, EvaluateAndAttack) {
  CliRun r = Cli({"evaluate", "--scenario", kTiny, "--solution", R"({"0":0,"1":2,"2":4})"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "4.0\n");
  r = Cli({"attack", "--scenario", kTiny, "--solution", R"({"0":0,"1":2,"2":4})",
           "--model", "optimal"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "removed {p0}\nresidual 4.0\nevals 3\n");
  r = Cli({"evaluate", "--scenario", kTiny, "--solution", R"({"0":0,"1":2,"2":4})",
           "-k", "0"});
  EXPECT_EQ(r.out, "6.0\n");
}

TEST(CliTest, SolutionFromFile) {
  const fs::path dir = TempDir("sol");
  const CliRun solved = Cli({"solve", "--scenario", kTiny, "--solver", "2pg", "--out",
                          (dir / "sol.json").string()});
  ASSERT_EQ(solved.code, 0) << solved.err;
  const CliRun r = Cli({"evaluate", "--scenario", kTiny, "--solution",
                     "@" + (dir / "sol.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "4.0\n");
}

TEST(CliTest, Bruteforce) {
  const CliRun r = Cli({"bruteforce", "--scenario", kTiny});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("residual 4.0\n"), std::string::npos);
  EXPECT_NE(r.out.find("enumerated 8\n"), std::string::npos);
  const CliRun small = Cli({"bruteforce", "--scenario", kTiny, "--budget", "3"});
  EXPECT_EQ(small.code, 1);
  EXPECT_NE(small.err.find("rcm bruteforce: "), std::string::npos);
}

TEST(CliTest, ExportIlpMatchesGolden) {
  const CliRun r = Cli({"export-ilp", "--scenario", kTiny});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, Slurp(kData + "/golden/tiny.lp"));
}

TEST(CliTest, ErrorsNameTheStage) {
  CliRun r = Cli({"solve", "--scenario", kData + "/missing.json", "--solver", "obg"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("rcm solve: load scenario: ", 0), 0u) << r.err;

  r = Cli({"solve", "--scenario", kTiny, "--solver", "obg", "--alpha", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("load scenario"), std::string::npos) << r.err;

  r = Cli({"evaluate", "--scenario", kTiny, "--solution", R"({"0":1,"1":1,"2":4})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("rcm evaluate: load solution: "), std::string::npos) << r.err;

  r = Cli({"attack", "--scenario", kTiny, "--solution", R"({"0":0,"1":2,"2":4})",
           "--model", "a3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("rcm attack: attack: "), std::string::npos) << r.err;

  r = Cli({"solve", "--scenario", kTiny, "--solver", "greedy"});
  EXPECT_EQ(r.code, 1);
}

TEST(CliTest, UsageErrors) {
  EXPECT_NE(Cli({"solve", "--scenario", kTiny, "--solver", "obg", "--frobnicate"}).code, 0);
  EXPECT_NE(Cli({"solve", "--solver", "obg"}).code, 0);
  EXPECT_NE(Cli({}).code, 0);
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

TEST(CliTest, GenerateIsReproducible) {
  const CliRun a = Cli({"generate", "--seed", "1", "--alpha", "6"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, Cli({"generate", "--seed", "1", "--alpha", "6"}).out);
  EXPECT_NE(a.out, Cli({"generate", "--seed", "2", "--alpha", "6"}).out);
  const fs::path dir = TempDir("gen");
  const CliRun b = Cli({"generate", "--seed", "1", "--alpha", "6", "--out",
                     (dir / "s.json").string(), "--geometry",
                     (dir / "g.json").string()});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(Slurp(dir / "s.json"), a.out);
  EXPECT_EQ(Slurp(dir / "s.json"), Slurp(kData + "/golden/geo_seed1.json"));
  EXPECT_EQ(Slurp(dir / "g.json").rfind("{\"region_side\":", 0), 0u);
  EXPECT_EQ(Cli({"generate", "--robots", "3", "--alpha", "4"}).code, 1);
}

TEST(CliTest, Bench) {
  const fs::path dir = TempDir("bench");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"kind": "accuracy_vs_bf", "repetitions": 2, "alphas": [1],
               "solvers": ["obg", "2pg"], "geo": {"robots": 4, "targets": 20}})";
  }
  const CliRun r = Cli({"bench", "--config", (dir / "cfg.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("seed,solver,alpha,fail_size,residual", 0), 0u);
  EXPECT_NE(r.out.find("\n\nsolver,alpha,fail_size,n_robots,count"), std::string::npos);
  const CliRun files = Cli({"bench", "--config", (dir / "cfg.json").string(), "--threads",
                         "2", "--out", (dir / "rows.csv").string(), "--aggregates",
                         (dir / "agg.csv").string()});
  ASSERT_EQ(files.code, 0) << files.err;
  EXPECT_EQ(Slurp(dir / "rows.csv") + "\n" + Slurp(dir / "agg.csv"), r.out);
  EXPECT_EQ(Cli({"bench", "--config", (dir / "none.json").string()}).code, 1);
}

TEST(CliTest, Rpm) {
  const fs::path dir = TempDir("rpm");
  const std::vector<std::string> args = {
      "rpm", "--rounds", "4", "--width", "30", "--height", "30", "--obstacles", "4",
      "--robots", "3", "--vis-range", "4", "--alpha", "1", "--solver", "org-u-i",
      "--pgm-dir", dir.string(), "--pgm-every", "2"};
  const CliRun r = Cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind(RoundCsvHeader(), 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_EQ(r.out, Cli(args).out);
  EXPECT_TRUE(fs::exists(dir / "round_00002.pgm"));
  EXPECT_TRUE(fs::exists(dir / "round_00004.pgm"));
  EXPECT_FALSE(fs::exists(dir / "round_00001.pgm"));
  EXPECT_EQ(Slurp(dir / "round_00002.pgm").size(), std::string("P5\n30 30\n255\n").size() + 900);
  EXPECT_EQ(Cli({"rpm", "--fail-model", "sometimes"}).code, 1);
}

}  // namespace
}  // namespace rcm
