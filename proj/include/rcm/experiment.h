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
// Seeded experiment harness.
//
// Every repetition i uses seed base_seed + i for its scenario, so all solvers
// in one repetition see the same instance. Rows are emitted in repetition
// order whatever the thread count, so reports are reproducible byte for byte
// as long as timing is off.
//
// Kinds:
//   accuracy_vs_bf   residual relative to the exhaustive optimum
//   relative_vs_2pg  residual relative to the two-phase greedy baseline
//   large_a2         as relative_vs_2pg, evaluated with the A2 attacker
//   runtime          f_evals and wall time over growing robot counts
//   sensitivity      plan for alpha, evaluate under other failure counts
//   rpm              persistent-monitoring simulation, mean realized
//                    latency reduction per round
//

#ifndef RCM_EXPERIMENT_H_
#define RCM_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/attack.h"
#include "rcm/exact.h"
#include "rcm/rpm.h"
#include "rcm/scenario_gen.h"

namespace rcm {

enum class ExperimentKind {
  kAccuracyVsBf,
  kRelativeVs2pg,
  kLargeA2,
  kRuntime,
  kSensitivity,
  kRpm,
};

std::string_view ExperimentKindName(ExperimentKind kind);
ExperimentKind ParseExperimentKind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kRelativeVs2pg;
  GeoConfig geo;
  RpmConfig rpm;
  int rpm_rounds = 20;
  FailModel rpm_fail_model = FailModel::kA2;
  std::vector<std::string> solvers;
  AttackModel eval_model = AttackModel::kOptimal;
  std::vector<int> alphas;
  // Failure counts evaluated by the sensitivity experiment.
  std::vector<int> fail_sizes;
  // Robot counts swept by the runtime experiment.
  std::vector<int> robot_counts;
  int repetitions = 100;
  uint64_t base_seed = 1;
  // Record wall time; when off the column reads NA and output is
  // deterministic.
  bool timing = false;
  int threads = 1;
  uint64_t attack_budget = kDefaultAttackBudget;
  uint64_t bruteforce_budget = kDefaultBruteforceBudget;

  // Throws std::invalid_argument.
  void Validate() const;
};

// Default settings for each kind.
ExperimentConfig DefaultExperimentConfig(ExperimentKind kind);

// JSON object with a mandatory "kind"; every other key overrides the kind's
// defaults. Keys: solvers, eval_model, alphas, fail_sizes, robot_counts,
// repetitions, base_seed, timing, threads, attack_budget, bruteforce_budget,
// rounds, fail_model, geo {region_side, robots, targets, traj_per_robot,
// traj_len, sense_dist, fan_half_angle_deg, minor_axis_ratio, arc_samples},
// rpm {width, height, obstacles, robots, vis_range,
// l_max, traj_len, permanent_failures}. Throws ParseError.
ExperimentConfig ParseExperimentConfig(std::string_view text);

struct ExperimentRow {
  uint64_t seed = 0;
  std::string solver;
  int alpha = 0;
  int fail_size = 0;
  int n_robots = 0;
  double residual = 0.0;
  std::optional<double> reference_residual;
  int64_t f_evals = 0;
  std::optional<double> wall_time_ms;

  // 100 * residual / reference when the reference is positive.
  std::optional<double> relative_accuracy_percent() const;
};

struct AggregateRow {
  std::string solver;
  int alpha = 0;
  int fail_size = 0;
  int n_robots = 0;
  int count = 0;
  double mean_residual = 0.0;
  double std_residual = 0.0;
  // Over rows with a defined relative accuracy.
  int accuracy_count = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double mean_f_evals = 0.0;
  std::optional<double> mean_wall_time_ms;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<AggregateRow> aggregates;
};

ExperimentReport RunExperiment(const ExperimentConfig& cfg);

// Groups by (solver, alpha, fail_size, n_robots) in first-appearance order.
// Standard deviations are sample deviations (0 for a single row).
std::vector<AggregateRow> Aggregate(const std::vector<ExperimentRow>& rows);

// Header: seed,solver,alpha,fail_size,residual,reference_residual,
// relative_accuracy_percent,f_evals,wall_time_ms,n_robots
std::string RowsCsv(const std::vector<ExperimentRow>& rows);
std::string AggregatesCsv(const std::vector<AggregateRow>& aggregates);

}  // namespace rcm

#endif  // RCM_EXPERIMENT_H_
