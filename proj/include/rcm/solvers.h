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
// Polynomial-time solvers for resilient coverage maximization.
//
//   obg   Oblivious Greedy: every robot takes its best standalone trajectory.
//   org   Ordered Greedy: robots are sorted by a per-robot value, then each
//         robot in turn takes the trajectory with the largest marginal gain
//         over the robots already assigned.
//   ls    Local Search: first-improvement hill climbing over single-robot
//         swaps, scoring each neighbor by its coverage after a greedy attack.
//   tpg   Two-phase greedy baseline: a bait set of alpha robots is fixed
//         first, the rest are completed by global greedy selection.
//
// All solvers are deterministic for a given scenario (org-r additionally
// depends on its seed). Ties go to the lowest trajectory id, robot orderings
// to the lowest robot id.
//

#ifndef RCM_SOLVERS_H_
#define RCM_SOLVERS_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/attack.h"
#include "rcm/scenario.h"

namespace rcm {

enum class SolverKind { kObg, kOrg, kLs, kTpg };
enum class SortCriteria { kUnion, kMaxIndividual, kRandom };
enum class SortOrder { kIncreasing, kDecreasing };
enum class LsInit { kObg, kOrgUnionIncreasing };

struct SolverSpec {
  SolverKind kind = SolverKind::kObg;
  SortCriteria org_criteria = SortCriteria::kUnion;
  SortOrder org_order = SortOrder::kIncreasing;
  AttackModel ls_attack = AttackModel::kA2;
  LsInit ls_init = LsInit::kOrgUnionIncreasing;
  uint64_t rng_seed = 0;
};

// Canonical CLI names, in a stable order.
const std::vector<std::string>& SolverNames();
// Accepts any name from SolverNames(). Throws std::invalid_argument.
SolverSpec ParseSolverSpec(std::string_view name, uint64_t rng_seed = 0);
std::string SolverName(const SolverSpec& spec);

struct SolveReport {
  FeasibleSolution solution;
  // Coverage-function evaluations, counting each marginal query as one.
  int64_t f_evals = 0;
  // Accepted local-search moves; 0 for the other solvers.
  int64_t ls_iterations = 0;
  std::chrono::nanoseconds wall_time{0};
  // Gain of every greedy pick, in pick order (obg, org, tpg).
  std::vector<double> step_gains;
  // Objective estimate of the start point and of every accepted move (ls).
  std::vector<double> ls_estimates;
};

SolveReport SolveObg(const Scenario& s);
SolveReport SolveOrg(const Scenario& s, const SolverSpec& spec);
SolveReport SolveLs(const Scenario& s, const SolverSpec& spec);
SolveReport SolveTpg(const Scenario& s);
// Dispatches on spec.kind.
SolveReport Solve(const Scenario& s, const SolverSpec& spec);

// Per-robot sort key for org. kUnion is the weight of the union of all the
// robot's trajectories, kMaxIndividual the best standalone coverage.
// kRandom is rejected with std::invalid_argument.
double SortValue(const Scenario& s, RobotId r, SortCriteria criteria);

// F(sol \ A(sol)) for a greedy attack of size alpha, as used by ls.
double EstimateResidual(const Scenario& s, const FeasibleSolution& sol,
                        AttackModel attack, int alpha, int64_t* evals);

}  // namespace rcm

#endif  // RCM_SOLVERS_H_
