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


#include <gtest/gtest.h>

#include "properties.h"
#include "rcm/attack.h"
#include "rcm/coverage.h"
#include "rcm/scenario.h"

namespace rcm {
namespace {

const std::vector<TrajectoryId> kSol = {0, 2, 4};

TEST(OptimalAttackTest, TinyExamples) {
  const Scenario s = TinyScenario();
  const AttackResult k0 = OptimalAttack(s, kSol, 0);
  EXPECT_TRUE(k0.removed.empty());
  EXPECT_DOUBLE_EQ(k0.residual, 6.0);

  const AttackResult k1 = OptimalAttack(s, kSol, 1);
  EXPECT_EQ(k1.removed, (std::vector<TrajectoryId>{0}));
  EXPECT_DOUBLE_EQ(k1.residual, 4.0);
  EXPECT_EQ(k1.evals, 3);

  EXPECT_DOUBLE_EQ(OptimalAttack(s, kSol, 3).residual, 0.0);
  // Larger attacks are clamped to the solution size.
  const AttackResult k9 = OptimalAttack(s, kSol, 9);
  EXPECT_EQ(k9.removed, kSol);
  EXPECT_DOUBLE_EQ(k9.residual, 0.0);
}

TEST(OptimalAttackTest, BudgetAndArguments) {
  const Scenario s = TinyScenario();
  EXPECT_THROW(OptimalAttack(s, kSol, 1, 2), BudgetExceeded);
  EXPECT_NO_THROW(OptimalAttack(s, kSol, 1, 3));
  EXPECT_THROW(OptimalAttack(s, kSol, -1), std::invalid_argument);
  EXPECT_THROW(GreedyAttackA1(s, kSol, -1), std::invalid_argument);
  EXPECT_EQ(BinomialSaturating(5, 2), 10u);
  EXPECT_EQ(BinomialSaturating(3, 5), 0u);
  EXPECT_EQ(BinomialSaturating(200, 100), UINT64_MAX);
}

TEST(GreedyAttackTest, A1TinyExamples) {
  const Scenario s = TinyScenario();
  const AttackResult k1 = GreedyAttackA1(s, kSol, 1);
  EXPECT_EQ(k1.removed, (std::vector<TrajectoryId>{0}));
  EXPECT_DOUBLE_EQ(k1.residual, 4.0);
  const AttackResult k2 = GreedyAttackA1(s, kSol, 2);
  EXPECT_EQ(k2.removed, (std::vector<TrajectoryId>{0, 4}));
  EXPECT_DOUBLE_EQ(k2.residual, 2.0);
  EXPECT_TRUE(GreedyAttackA1(s, kSol, 0).removed.empty());
}

TEST(GreedyAttackTest, A2TinyExamples) {
  const Scenario s = TinyScenario();
  const AttackResult k1 = GreedyAttackA2(s, kSol, 1);
  EXPECT_EQ(k1.removed, (std::vector<TrajectoryId>{0}));
  EXPECT_DOUBLE_EQ(k1.residual, 4.0);
  const AttackResult k2 = GreedyAttackA2(s, kSol, 2);
  EXPECT_EQ(k2.removed, (std::vector<TrajectoryId>{0, 2}));
  EXPECT_DOUBLE_EQ(k2.residual, 2.0);
  EXPECT_DOUBLE_EQ(GreedyAttackA2(s, kSol, 3).residual, 0.0);
  EXPECT_TRUE(GreedyAttackA2(s, kSol, 0).removed.empty());
}

TEST(GreedyAttackTest, NaiveVersionsAgreeOnTiny) {
  const Scenario s = TinyScenario();
  for (int k = 0; k <= 4; ++k) {
    const AttackResult a1 = GreedyAttackA1(s, kSol, k);
    const AttackResult n1 = NaiveGreedyAttackA1(s, kSol, k);
    EXPECT_EQ(a1.removed, n1.removed);
    EXPECT_EQ(a1.residual, n1.residual);
    const AttackResult a2 = GreedyAttackA2(s, kSol, k);
    const AttackResult n2 = NaiveGreedyAttackA2(s, kSol, k);
    EXPECT_EQ(a2.removed, n2.removed);
    EXPECT_EQ(a2.residual, n2.residual);
  }
}

TEST(ResidualCoverageTest, Dispatch) {
  const Scenario s = TinyScenario();
  const FeasibleSolution sol{kSol};
  EXPECT_DOUBLE_EQ(ResidualCoverage(s, sol, AttackModel::kOptimal, 1).residual, 4.0);
  EXPECT_DOUBLE_EQ(ResidualCoverage(s, sol, AttackModel::kA2, 1).residual, 4.0);
  for (AttackModel m : {AttackModel::kOptimal, AttackModel::kA1, AttackModel::kA2}) {
    EXPECT_DOUBLE_EQ(ResidualCoverage(s, sol, m, 0).residual, 6.0);
    EXPECT_EQ(ParseAttackModel(AttackModelName(m)), m);
  }
  EXPECT_THROW(ParseAttackModel("a3"), std::invalid_argument);
}

TEST(AttackPropertyTest, OptimalDominates) {
  const testing::PropertyResult r = testing::CheckOptimalDominance(31, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(AttackPropertyTest, A1WithinOneMinusInverseE) {
  const testing::PropertyResult r = testing::CheckA1Bound(32, 300);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(AttackPropertyTest, AcceleratedMatchesNaive) {
  const testing::PropertyResult r = testing::CheckAccelerationEquivalence(33, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(AttackPropertyTest, ResidualIsCoverageOfSurvivors) {
  Rng rng(34);
  for (int i = 0; i < 500; ++i) {
    const Scenario s = testing::RandomScenario(rng, {.integer_weights = false});
    const FeasibleSolution sol = testing::RandomSolution(s, rng);
    const int k = static_cast<int>(rng.Between(0, s.num_robots() + 1));
    for (AttackModel m : {AttackModel::kOptimal, AttackModel::kA1, AttackModel::kA2}) {
      const AttackResult a = ResidualCoverage(s, sol, m, k);
      std::vector<TrajectoryId> rest;
      for (TrajectoryId p : sol.chosen) {
        if (!std::binary_search(a.removed.begin(), a.removed.end(), p)) rest.push_back(p);
      }
      EXPECT_NEAR(a.residual, CoverageValue(s, rest), 1e-9);
      EXPECT_EQ(a.removed.size(),
                std::min<size_t>(static_cast<size_t>(k), sol.chosen.size()));
      EXPECT_TRUE(std::is_sorted(a.removed.begin(), a.removed.end()));
    }
  }
}

}  // namespace
}  // namespace rcm
