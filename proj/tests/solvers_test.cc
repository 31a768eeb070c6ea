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


#include <set>

#include <gtest/gtest.h>

#include "properties.h"
#include "rcm/attack.h"
#include "rcm/coverage.h"
#include "rcm/scenario_gen.h"
#include "rcm/solvers.h"

namespace rcm {
namespace {

using Ids = std::vector<TrajectoryId>;

TEST(SolverNamesTest, ParseAndPrintRoundTrip) {
  EXPECT_EQ(SolverNames().size(), 11u);
  for (const std::string& name : SolverNames()) {
    EXPECT_EQ(SolverName(ParseSolverSpec(name)), name);
  }
  EXPECT_THROW(ParseSolverSpec("greedy"), std::invalid_argument);
  EXPECT_THROW(ParseSolverSpec("ls-opt-i1"), std::invalid_argument);
  const SolverSpec spec = ParseSolverSpec("org-m-d");
  EXPECT_EQ(spec.kind, SolverKind::kOrg);
  EXPECT_EQ(spec.org_criteria, SortCriteria::kMaxIndividual);
  EXPECT_EQ(spec.org_order, SortOrder::kDecreasing);
}

TEST(ObgTest, Tiny) {
  const Scenario s = TinyScenario();
  const SolveReport r = SolveObg(s);
  EXPECT_EQ(r.solution.chosen, (Ids{0, 2, 4}));
  EXPECT_EQ(r.f_evals, 6);
  EXPECT_EQ(r.ls_iterations, 0);
  EXPECT_DOUBLE_EQ(CoverageValue(s, r.solution.chosen), 6.0);
}

TEST(ObgTest, DegenerateScenarios) {
  const Scenario one = Scenario::Create({{0, 1.0}, {1, 1.0}}, {{0, {0, 1, 2}}},
                                        {{0, 0, {0}}, {1, 0, {0, 1}}, {2, 0, {1}}}, 0);
  EXPECT_EQ(SolveObg(one).solution.chosen, (Ids{1}));
  const Scenario unique = Scenario::Create(
      {{0, 1.0}}, {{0, {0}}, {1, {1}}}, {{0, 0, {0}}, {1, 1, {}}}, 1);
  for (const std::string& name : SolverNames()) {
    EXPECT_EQ(Solve(unique, ParseSolverSpec(name)).solution.chosen, (Ids{0, 1}))
        << name;
  }
}

TEST(SortValueTest, Tiny) {
  const Scenario s = TinyScenario();
  EXPECT_DOUBLE_EQ(SortValue(s, 0, SortCriteria::kUnion), 3.0);
  EXPECT_DOUBLE_EQ(SortValue(s, 1, SortCriteria::kUnion), 3.0);
  EXPECT_DOUBLE_EQ(SortValue(s, 2, SortCriteria::kUnion), 2.0);
  EXPECT_DOUBLE_EQ(SortValue(s, 1, SortCriteria::kMaxIndividual), 2.0);
  const Scenario weighted = testing::Reweighted(s, {1, 2, 3, 4, 5, 6});
  EXPECT_DOUBLE_EQ(SortValue(weighted, 2, SortCriteria::kUnion), 11.0);
  EXPECT_THROW(SortValue(s, 0, SortCriteria::kRandom), std::invalid_argument);
}

TEST(OrgTest, TinyIncreasing) {
  const SolveReport r = Solve(TinyScenario(), ParseSolverSpec("org-u-i"));
  EXPECT_EQ(r.solution.chosen, (Ids{0, 2, 4}));
  // r2 picks p4 first, then r0 p0, then r1 p2 on a tie.
  EXPECT_EQ(r.step_gains, (std::vector<double>{2.0, 3.0, 1.0}));
  EXPECT_LE(r.f_evals, 12);
}

TEST(OrgTest, TinyDecreasing) {
  const SolveReport r = Solve(TinyScenario(), ParseSolverSpec("org-u-d"));
  EXPECT_EQ(r.solution.chosen, (Ids{0, 3, 4}));
  EXPECT_EQ(r.step_gains, (std::vector<double>{3.0, 2.0, 1.0}));
}

TEST(OrgTest, RandomOrderIsSeeded) {
  GeoConfig geo;
  geo.seed = 9;
  const Scenario s = Generate(geo);
  const SolveReport a = Solve(s, ParseSolverSpec("org-r", 123));
  const SolveReport b = Solve(s, ParseSolverSpec("org-r", 123));
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.step_gains, b.step_gains);
}

TEST(LsTest, TinyA2I2StaysAtStart) {
  const SolveReport r = Solve(TinyScenario(), ParseSolverSpec("ls-a2-i2"));
  EXPECT_EQ(r.solution.chosen, (Ids{0, 2, 4}));
  EXPECT_EQ(r.ls_iterations, 0);
  EXPECT_EQ(r.ls_estimates, (std::vector<double>{4.0}));
}

TEST(LsTest, TinyNeighborsDoNotImprove) {
  const Scenario s = TinyScenario();
  const FeasibleSolution start{{0, 2, 4}};
  for (size_t r = 0; r < s.num_robots(); ++r) {
    for (TrajectoryId p : s.robot(static_cast<RobotId>(r)).trajectories) {
      FeasibleSolution n = start;
      n.chosen[r] = p;
      EXPECT_LE(EstimateResidual(s, n, AttackModel::kA2, 1, nullptr), 4.0);
    }
  }
}

TEST(LsTest, AlphaZeroIsHillClimbing) {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const Scenario s = testing::RandomScenario(rng).WithAlpha(0);
    const SolveReport r = Solve(s, ParseSolverSpec("ls-a1-i1"));
    EXPECT_DOUBLE_EQ(r.ls_estimates.back(), CoverageValue(s, r.solution.chosen));
    // No single swap improves coverage.
    for (size_t robot = 0; robot < s.num_robots(); ++robot) {
      for (TrajectoryId p : s.robot(static_cast<RobotId>(robot)).trajectories) {
        FeasibleSolution n = r.solution;
        n.chosen[robot] = p;
        EXPECT_LE(CoverageValue(s, n.chosen), r.ls_estimates.back());
      }
    }
  }
}

TEST(LsTest, EstimatesStrictlyIncrease) {
  const testing::PropertyResult r = testing::CheckLsStrictIncrease(42, 500);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(TpgTest, Tiny) {
  const SolveReport r = SolveTpg(TinyScenario());
  EXPECT_EQ(r.solution.chosen, (Ids{0, 2, 4}));
  // Phase-2 picks: p2 (tie at 2.0 with p3, p4), then p4.
  EXPECT_EQ(r.step_gains, (std::vector<double>{2.0, 2.0}));
}

TEST(TpgTest, AlphaExtremes) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const Scenario s = testing::RandomScenario(rng);
    const Scenario all = s.WithAlpha(static_cast<int>(s.num_robots()));
    EXPECT_EQ(SolveTpg(all).solution, SolveObg(all).solution);
    // With no bait the phase-2 greedy sees every robot.
    const SolveReport none = SolveTpg(s.WithAlpha(0));
    EXPECT_EQ(none.step_gains.size(), s.num_robots());
    double sum = 0.0;
    for (double g : none.step_gains) sum += g;
    EXPECT_NEAR(sum, CoverageValue(s, none.solution.chosen), 1e-9);
  }
}

TEST(SolverPropertyTest, AllOutputsFeasible) {
  const testing::PropertyResult r = testing::CheckSolverFeasibility(44, 200);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(SolverPropertyTest, EvaluationCounts) {
  for (int n : {5, 10, 20, 40}) {
    GeoConfig geo;
    geo.n_robots = n;
    geo.seed = static_cast<uint64_t>(n);
    const Scenario s = Generate(geo);
    const auto p = static_cast<int64_t>(s.num_trajectories());
    EXPECT_EQ(SolveObg(s).f_evals, p);
    for (const char* name : {"org-u-i", "org-u-d", "org-m-i", "org-m-d", "org-r"}) {
      EXPECT_LE(Solve(s, ParseSolverSpec(name)).f_evals, 2 * p) << name;
    }
    EXPECT_LE(SolveTpg(s).f_evals, p + p * p);
  }
}

}  // namespace
}  // namespace rcm
