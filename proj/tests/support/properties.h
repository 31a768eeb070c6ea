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
// Random instances and property checks shared by the unit tests and the
// acceptance binary.
//

#ifndef RCM_TESTS_SUPPORT_PROPERTIES_H_
#define RCM_TESTS_SUPPORT_PROPERTIES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rcm/random.h"
#include "rcm/rpm.h"
#include "rcm/scenario.h"

namespace rcm::testing {

struct RandomShape {
  int min_robots = 1;
  int max_robots = 5;
  int max_traj_per_robot = 4;
  int min_targets = 1;
  int max_targets = 12;
  // Integer weights in [1, max_int_weight]; otherwise real weights in
  // [0, 3) with an occasional zero.
  bool integer_weights = true;
  int max_int_weight = 3;
};

// Scenario with random covers and a random alpha in [0, |R|].
Scenario RandomScenario(Rng& rng, const RandomShape& shape = {});
FeasibleSolution RandomSolution(const Scenario& s, Rng& rng);

// Same scenario with target t weighing weights[t].
Scenario Reweighted(const Scenario& s, const std::vector<double>& weights);

// Obstacle-sprinkled world small enough for many steps.
GridWorld RandomSmallWorld(Rng& rng);

struct PropertyResult {
  int64_t cases = 0;
  int64_t violations = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && violations == 0; }
  void Fail(const std::string& what) {
    if (violations++ == 0) first_failure = what;
  }
};

// F(A) <= F(B) and F(A+p)-F(A) >= F(B+p)-F(B) for random A, B, p.
PropertyResult CheckMonotoneSubmodular(uint64_t seed, int cases);
// Counter value against a from-scratch recompute over random add/remove
// sequences, plus marginal gain/loss against the set oracle.
PropertyResult CheckCounterAudit(uint64_t seed, int cases);
// Accepted LS estimates strictly increase and the output is feasible.
PropertyResult CheckLsStrictIncrease(uint64_t seed, int cases);
// Every registered solver returns a feasible solution.
PropertyResult CheckSolverFeasibility(uint64_t seed, int cases);
// Latency stays in [0, l_max] and matches an independent replay of the
// round: cells seen by survivors are 0, others grew by one up to the cap.
PropertyResult CheckLatencyField(uint64_t seed, int cases);
// Optimal attack leaves no more than A1 or A2.
PropertyResult CheckOptimalDominance(uint64_t seed, int cases);
// F(A1 removed set) >= (1 - 1/e) max_{|A|=k} F(A), exhaustive maximum.
PropertyResult CheckA1Bound(uint64_t seed, int cases);
// Counter-based A1/A2 equal the naive versions; A2 queries <= k * |sol|.
PropertyResult CheckAccelerationEquivalence(uint64_t seed, int cases);

}  // namespace rcm::testing

#endif  // RCM_TESTS_SUPPORT_PROPERTIES_H_
