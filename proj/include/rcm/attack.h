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

//
// Attacks on a chosen trajectory set.
//
// An attack of size k removes at most k trajectories from a solution. The
// optimal attack minimizes the coverage of the survivors by exhaustive
// enumeration. The two greedy attackers run in polynomial time:
//
//   A1 grows a removal set X from empty, each step adding the trajectory
//      with the largest marginal coverage gain for X.
//   A2 shrinks X from the full solution, each step dropping the trajectory
//      whose removal loses the most coverage; the removed set is sol \ X.
//
// Attack sizes larger than the solution are clamped. Every argmax breaks
// ties toward the lowest trajectory id.
//

#ifndef RCM_ATTACK_H_
#define RCM_ATTACK_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/scenario.h"

namespace rcm {

inline constexpr uint64_t kDefaultAttackBudget = 10'000'000;

// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AttackResult {
  // Removed trajectory ids, sorted ascending.
  std::vector<TrajectoryId> removed;
  // F of the surviving trajectories.
  double residual = 0.0;
  // Coverage-oracle calls: subsets scored for the optimal attack, marginal
  // queries for the accelerated greedy attacks, F evaluations for the naive
  // ones.
  int64_t evals = 0;

  friend bool operator==(const AttackResult&, const AttackResult&) = default;
};

enum class AttackModel { kOptimal, kA1, kA2 };

std::string_view AttackModelName(AttackModel model);
// Accepts "optimal", "a1", "a2". Throws std::invalid_argument.
AttackModel ParseAttackModel(std::string_view name);

// Number of k-subsets of n items, saturating at UINT64_MAX.
uint64_t BinomialSaturating(uint64_t n, uint64_t k);

// Exact minimizer of F(sol \ A) over |A| <= k. Only subsets of size exactly
// min(k, |sol|) are scored (F is monotone); ties go to the lexicographically
// smallest sorted id sequence. Throws BudgetExceeded when C(|sol|, k) is
// larger than `budget`.
AttackResult OptimalAttack(const Scenario& s, std::span<const TrajectoryId> sol,
                           int k, uint64_t budget = kDefaultAttackBudget);

// Counter-based greedy attacks; O(k * |sol|) marginal queries.
AttackResult GreedyAttackA1(const Scenario& s,
                            std::span<const TrajectoryId> sol, int k);
AttackResult GreedyAttackA2(const Scenario& s,
                            std::span<const TrajectoryId> sol, int k);

// Reference versions that recompute F from scratch for every candidate.
// They exist to check the counter-based versions.
AttackResult NaiveGreedyAttackA1(const Scenario& s,
                                 std::span<const TrajectoryId> sol, int k);
AttackResult NaiveGreedyAttackA2(const Scenario& s,
                                 std::span<const TrajectoryId> sol, int k);

// Dispatches to the attack selected by `model`.
AttackResult ResidualCoverage(const Scenario& s,
                              std::span<const TrajectoryId> sol,
                              AttackModel model, int k,
                              uint64_t budget = kDefaultAttackBudget);

inline AttackResult ResidualCoverage(const Scenario& s,
                                     const FeasibleSolution& sol,
                                     AttackModel model, int k,
                                     uint64_t budget = kDefaultAttackBudget) {
  return ResidualCoverage(s, std::span<const TrajectoryId>(sol.chosen), model,
                          k, budget);
}

}  // namespace rcm

#endif  // RCM_ATTACK_H_
