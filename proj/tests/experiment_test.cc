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


#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rcm/experiment.h"

namespace rcm {
namespace {

ExperimentConfig Small(ExperimentKind kind) {
  ExperimentConfig cfg = DefaultExperimentConfig(kind);
  cfg.repetitions = 4;
  cfg.geo.n_robots = 5;
  cfg.geo.n_targets = 30;
  cfg.alphas = {1, 2};
  return cfg;
}

TEST(ExperimentTest, KindNames) {
  for (ExperimentKind kind :
       {ExperimentKind::kAccuracyVsBf, ExperimentKind::kRelativeVs2pg,
        ExperimentKind::kLargeA2, ExperimentKind::kRuntime,
        ExperimentKind::kSensitivity, ExperimentKind::kRpm}) {
    EXPECT_EQ(ParseExperimentKind(ExperimentKindName(kind)), kind);
    EXPECT_NO_THROW(DefaultExperimentConfig(kind).Validate());
  }
  EXPECT_THROW(ParseExperimentKind("bogus"), std::invalid_argument);
}

TEST(ExperimentTest, DeterministicAcrossThreads) {
  ExperimentConfig cfg = Small(ExperimentKind::kRelativeVs2pg);
  cfg.solvers = {"obg", "org-r", "ls-a1-i1", "2pg"};
  const ExperimentReport one = RunExperiment(cfg);
  const ExperimentReport again = RunExperiment(cfg);
  cfg.threads = 3;
  const ExperimentReport three = RunExperiment(cfg);
  EXPECT_EQ(RowsCsv(one.rows), RowsCsv(again.rows));
  EXPECT_EQ(RowsCsv(one.rows), RowsCsv(three.rows));
  EXPECT_EQ(AggregatesCsv(one.aggregates), AggregatesCsv(three.aggregates));
  EXPECT_EQ(one.rows.size(), 4u * 2u * 4u);
  EXPECT_EQ(one.rows.front().seed, 1u);
  EXPECT_EQ(one.rows.back().seed, 4u);
}

TEST(ExperimentTest, SingleRepetitionIsStable) {
  ExperimentConfig cfg = Small(ExperimentKind::kAccuracyVsBf);
  cfg.repetitions = 1;
  EXPECT_EQ(RowsCsv(RunExperiment(cfg).rows), RowsCsv(RunExperiment(cfg).rows));
}

TEST(ExperimentTest, ReferenceRowsAreExact) {
  const ExperimentReport rep = RunExperiment(Small(ExperimentKind::kRelativeVs2pg));
  int seen = 0;
  for (const ExperimentRow& r : rep.rows) {
    const auto acc = r.relative_accuracy_percent();
    if (r.solver == "2pg" && acc) {
      EXPECT_EQ(*acc, 100.0);
      ++seen;
    }
    EXPECT_FALSE(r.wall_time_ms.has_value());
  }
  EXPECT_GT(seen, 0);
  EXPECT_NE(RowsCsv(rep.rows).find(",NA,"), std::string::npos);
}

TEST(ExperimentTest, BruteForceNeverBeaten) {
  const ExperimentReport rep = RunExperiment(Small(ExperimentKind::kAccuracyVsBf));
  std::set<std::string> solvers;
  for (const ExperimentRow& r : rep.rows) {
    solvers.insert(r.solver);
    ASSERT_TRUE(r.reference_residual.has_value());
    EXPECT_LE(r.residual, *r.reference_residual + 1e-9) << r.solver;
    if (r.solver == "bf") {
      EXPECT_EQ(r.residual, *r.reference_residual);
      EXPECT_GT(r.f_evals, 0);
    }
  }
  EXPECT_EQ(solvers.count("bf"), 1u);
}

TEST(ExperimentTest, AggregatesMatchRows) {
  ExperimentConfig cfg = Small(ExperimentKind::kRelativeVs2pg);
  cfg.repetitions = 6;
  const ExperimentReport rep = RunExperiment(cfg);
  struct Acc {
    std::vector<double> residual, accuracy;
    double evals = 0;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const ExperimentRow& r : rep.rows) {
    Acc& a = groups[{r.solver, r.alpha}];
    a.residual.push_back(r.residual);
    if (auto acc = r.relative_accuracy_percent()) a.accuracy.push_back(*acc);
    a.evals += static_cast<double>(r.f_evals);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
  };
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
  };
  ASSERT_EQ(rep.aggregates.size(), groups.size());
  for (const AggregateRow& g : rep.aggregates) {
    const Acc& a = groups.at({g.solver, g.alpha});
    EXPECT_EQ(g.count, static_cast<int>(a.residual.size()));
    EXPECT_NEAR(g.mean_residual, mean(a.residual), 1e-9);
    EXPECT_NEAR(g.std_residual, sd(a.residual), 1e-9);
    EXPECT_EQ(g.accuracy_count, static_cast<int>(a.accuracy.size()));
    EXPECT_NEAR(g.mean_accuracy, mean(a.accuracy), 1e-9);
    EXPECT_NEAR(g.std_accuracy, sd(a.accuracy), 1e-9);
    EXPECT_NEAR(g.mean_f_evals, a.evals / g.count, 1e-9);
  }
  EXPECT_EQ(AggregatesCsv(rep.aggregates).substr(0, 37),
            "solver,alpha,fail_size,n_robots,count");
}

TEST(ExperimentTest, SensitivityRowsPerFailSize) {
  ExperimentConfig cfg = Small(ExperimentKind::kSensitivity);
  cfg.alphas = {2};
  cfg.fail_sizes = {0, 1, 3};
  cfg.solvers = {"obg", "2pg"};
  const ExperimentReport rep = RunExperiment(cfg);
  std::map<int, int> per_size;
  for (const ExperimentRow& r : rep.rows) {
    EXPECT_EQ(r.alpha, 2);
    ++per_size[r.fail_size];
  }
  EXPECT_EQ(per_size, (std::map<int, int>{{0, 8}, {1, 8}, {3, 8}}));
}

TEST(ExperimentTest, RuntimeSweepsRobots) {
  ExperimentConfig cfg = Small(ExperimentKind::kRuntime);
  cfg.robot_counts = {3, 6};
  cfg.alphas = {5};
  cfg.repetitions = 2;
  cfg.timing = true;
  const ExperimentReport rep = RunExperiment(cfg);
  std::set<int> robots;
  for (const ExperimentRow& r : rep.rows) {
    robots.insert(r.n_robots);
    EXPECT_LE(r.alpha, r.n_robots);
    EXPECT_TRUE(r.wall_time_ms.has_value());
    EXPECT_FALSE(r.reference_residual.has_value());
  }
  EXPECT_EQ(robots, (std::set<int>{3, 6}));
}

TEST(ExperimentTest, RpmKind) {
  ExperimentConfig cfg = DefaultExperimentConfig(ExperimentKind::kRpm);
  cfg.repetitions = 2;
  cfg.rpm_rounds = 3;
  cfg.rpm.width = 40;
  cfg.rpm.height = 40;
  cfg.rpm.n_obstacles = 6;
  cfg.rpm.n_robots = 4;
  cfg.rpm.vis_range = 5;
  cfg.alphas = {1};
  cfg.solvers = {"obg", "2pg"};
  const ExperimentReport rep = RunExperiment(cfg);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const ExperimentRow& r : rep.rows) {
    EXPECT_GE(r.residual, 0.0);
    if (r.solver == "2pg") EXPECT_EQ(r.relative_accuracy_percent().value_or(100), 100);
  }
}

TEST(ExperimentTest, ParseConfig) {
  const ExperimentConfig cfg = ParseExperimentConfig(
      R"({"kind": "sensitivity", "alphas": [2], "fail_sizes": [1, 2],
          "repetitions": 3, "geo": {"robots": 7, "fan_half_angle_deg": 30}})");
  EXPECT_EQ(cfg.kind, ExperimentKind::kSensitivity);
  EXPECT_EQ(cfg.alphas, (std::vector<int>{2}));
  EXPECT_EQ(cfg.fail_sizes, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.repetitions, 3);
  EXPECT_EQ(cfg.geo.n_robots, 7);
  EXPECT_EQ(cfg.geo.fan_half_angle_deg, 30.0);
  EXPECT_EQ(cfg.solvers, DefaultExperimentConfig(ExperimentKind::kSensitivity).solvers);

  EXPECT_THROW(ParseExperimentConfig("{"), ParseError);
  EXPECT_THROW(ParseExperimentConfig(R"({"alphas": [1]})"), ParseError);
  EXPECT_THROW(ParseExperimentConfig(R"({"kind": "nope"})"), ParseError);
  EXPECT_THROW(ParseExperimentConfig(R"({"kind": "rpm", "rounds": "ten"})"),
               ParseError);
  EXPECT_THROW(ParseExperimentConfig(R"({"kind": "rpm", "fail_model": "x"})"),
               ParseError);

  ExperimentConfig bad = DefaultExperimentConfig(ExperimentKind::kRuntime);
  bad.robot_counts.clear();
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = DefaultExperimentConfig(ExperimentKind::kAccuracyVsBf);
  bad.solvers = {"greedy"};
  EXPECT_THROW(RunExperiment(bad), std::invalid_argument);
}

}  // namespace
}  // namespace rcm
