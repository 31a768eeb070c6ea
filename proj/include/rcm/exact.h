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
// Exact resilient coverage maximization for small instances.
//
// SolveBruteforce scores every feasible solution with an exact worst-case
// attack. ExportIlp writes the same problem as an integer program in CPLEX LP
// text so an external MILP solver can cross-check it:
//
//   maximize   z
//   subject to sum_{p in P_r} x_p = 1                     for every robot r
//              sum_{p covers t, p not in V_w} x_p >= y_tw  for every t, w
//              sum_t w(t) y_tw >= z                        for every w
//
// where w ranges over all robot subsets of size <= alpha (including the empty
// one) and V_w is every trajectory owned by a robot in w.
//

#ifndef RCM_EXACT_H_
#define RCM_EXACT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rcm/attack.h"
#include "rcm/scenario.h"

namespace rcm {

inline constexpr uint64_t kDefaultBruteforceBudget = 100'000'000;
inline constexpr uint64_t kDefaultIlpAttackBudget = 100'000;

struct ExactResult {
  FeasibleSolution solution;
  // Residual coverage of `solution` under an optimal attack of size alpha.
  double residual = 0.0;
  // Feasible solutions examined.
  int64_t enumerated = 0;
};

// Enumerates the Cartesian product of the robots' trajectory lists in
// lexicographic order and returns the first maximizer of residual coverage.
// Throws BudgetExceeded when prod_r |P_r| * C(R, alpha) exceeds `budget`.
ExactResult SolveBruteforce(const Scenario& s,
                            uint64_t budget = kDefaultBruteforceBudget);

// Robot subsets of size <= alpha in lexicographic order of their sorted id
// tuples: (), (0), (0,1), ..., (0,2), ..., (1), ... Index i names y_t*_w{i}.
std::vector<std::vector<RobotId>> AttackSubsets(int num_robots, int alpha);

// CPLEX LP text for the scenario. Variables are named x_p{id}, y_t{id}_w{i}
// and z. Throws BudgetExceeded when there are more than `budget` attacks.
std::string ExportIlp(const Scenario& s,
                      uint64_t budget = kDefaultIlpAttackBudget);

}  // namespace rcm

#endif  // RCM_EXACT_H_
