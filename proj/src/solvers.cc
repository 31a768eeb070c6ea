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

#include "rcm/solvers.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "rcm/coverage.h"
#include "rcm/random.h"

namespace rcm {

namespace {

using Clock = std::chrono::steady_clock;

// F({p}). Cover lists are sorted, so this matches CoverageValue exactly.
double Standalone(const Scenario& s, TrajectoryId p) {
  double sum = 0.0;
  for (TargetId t : s.covers(p)) sum += s.weight(t);
  return sum;
}

std::vector<TrajectoryId> SortedCandidates(const Scenario& s, RobotId r) {
  std::vector<TrajectoryId> ids = s.robot(r).trajectories;
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Best trajectory of robot r by `score`, lowest id on ties.
template <typename Score>
std::pair<TrajectoryId, double> ArgmaxTrajectory(const Scenario& s, RobotId r,
                                                 Score score) {
  TrajectoryId best = -1;
  double best_value = 0.0;
  for (TrajectoryId p : s.robot(r).trajectories) {
    const double value = score(p);
    if (best == -1 || value > best_value ||
        (value == best_value && p < best)) {
      best = p;
      best_value = value;
    }
  }
  return {best, best_value};
}

void Stamp(SolveReport& report, Clock::time_point start) {
  report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      Clock::now() - start);
}

}  // namespace

const std::vector<std::string>& SolverNames() {
  static const std::vector<std::string> names = {
      "obg",      "org-u-i",  "org-u-d",  "org-m-i",  "org-m-d", "org-r",
      "ls-a1-i1", "ls-a1-i2", "ls-a2-i1", "ls-a2-i2", "2pg"};
  return names;
}

SolverSpec ParseSolverSpec(std::string_view name, uint64_t rng_seed) {
  SolverSpec spec;
  spec.rng_seed = rng_seed;
  if (name == "obg") {
    spec.kind = SolverKind::kObg;
  } else if (name == "2pg") {
    spec.kind = SolverKind::kTpg;
  } else if (name == "org-r") {
    spec.kind = SolverKind::kOrg;
    spec.org_criteria = SortCriteria::kRandom;
  } else if (name.size() == 7 && name.starts_with("org-") && name[5] == '-' &&
             (name[4] == 'u' || name[4] == 'm') &&
             (name[6] == 'i' || name[6] == 'd')) {
    spec.kind = SolverKind::kOrg;
    spec.org_criteria =
        name[4] == 'u' ? SortCriteria::kUnion : SortCriteria::kMaxIndividual;
    spec.org_order =
        name[6] == 'i' ? SortOrder::kIncreasing : SortOrder::kDecreasing;
  } else if (name.size() == 8 && name.starts_with("ls-a") && name[5] == '-' &&
             name[6] == 'i' && (name[4] == '1' || name[4] == '2') &&
             (name[7] == '1' || name[7] == '2')) {
    spec.kind = SolverKind::kLs;
    spec.ls_attack = name[4] == '1' ? AttackModel::kA1 : AttackModel::kA2;
    spec.ls_init =
        name[7] == '1' ? LsInit::kObg : LsInit::kOrgUnionIncreasing;
  } else {
    throw std::invalid_argument("unknown solver \"" + std::string(name) + "\"");
  }
  return spec;
}

std::string SolverName(const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::kObg:
      return "obg";
    case SolverKind::kTpg:
      return "2pg";
    case SolverKind::kOrg:
      if (spec.org_criteria == SortCriteria::kRandom) return "org-r";
      return std::string("org-") +
             (spec.org_criteria == SortCriteria::kUnion ? "u" : "m") + "-" +
             (spec.org_order == SortOrder::kIncreasing ? "i" : "d");
    case SolverKind::kLs:
      return std::string("ls-") +
             (spec.ls_attack == AttackModel::kA1 ? "a1" : "a2") + "-" +
             (spec.ls_init == LsInit::kObg ? "i1" : "i2");
  }
  return "?";
}

double SortValue(const Scenario& s, RobotId r, SortCriteria criteria) {
  switch (criteria) {
    case SortCriteria::kUnion:
      return CoverageValue(s, s.robot(r).trajectories);
    case SortCriteria::kMaxIndividual:
      return ArgmaxTrajectory(s, r, [&](TrajectoryId p) {
               return Standalone(s, p);
             }).second;
    case SortCriteria::kRandom:
      break;
  }
  throw std::invalid_argument("random ordering has no sort value");
}

SolveReport SolveObg(const Scenario& s) {
  const auto start = Clock::now();
  SolveReport report;
  report.solution.chosen.resize(s.num_robots());
  for (const Robot& r : s.robots()) {
    auto [best, value] = ArgmaxTrajectory(s, r.id, [&](TrajectoryId p) {
      ++report.f_evals;
      return Standalone(s, p);
    });
    report.solution.chosen[r.id] = best;
    report.step_gains.push_back(value);
  }
  Stamp(report, start);
  return report;
}

SolveReport SolveOrg(const Scenario& s, const SolverSpec& spec) {
  if (spec.kind != SolverKind::kOrg) {
    throw std::invalid_argument("SolveOrg needs an org solver spec");
  }
  const auto start = Clock::now();
  SolveReport report;
  const size_t num_robots = s.num_robots();

  std::vector<RobotId> order(num_robots);
  std::iota(order.begin(), order.end(), 0);
  if (spec.org_criteria == SortCriteria::kRandom) {
    Rng rng(spec.rng_seed);
    rng.Shuffle(std::span<RobotId>(order));
  } else {
    std::vector<double> key(num_robots);
    for (RobotId r : order) {
      key[r] = SortValue(s, r, spec.org_criteria);
      report.f_evals += spec.org_criteria == SortCriteria::kUnion
                            ? 1
                            : static_cast<int64_t>(
                                  s.robot(r).trajectories.size());
    }
    const bool increasing = spec.org_order == SortOrder::kIncreasing;
    std::stable_sort(order.begin(), order.end(), [&](RobotId a, RobotId b) {
      return increasing ? key[a] < key[b] : key[a] > key[b];
    });
  }

  CoverageCounter assigned(s);
  report.solution.chosen.assign(num_robots, -1);
  for (RobotId r : order) {
    auto [best, gain] = ArgmaxTrajectory(
        s, r, [&](TrajectoryId p) { return assigned.MarginalGain(p); });
    assigned.Add(best);
    report.solution.chosen[r] = best;
    report.step_gains.push_back(gain);
  }
  report.f_evals += assigned.queries();
  Stamp(report, start);
  return report;
}

double EstimateResidual(const Scenario& s, const FeasibleSolution& sol,
                        AttackModel attack, int alpha, int64_t* evals) {
  AttackResult result;
  switch (attack) {
    case AttackModel::kA1:
      result = GreedyAttackA1(s, sol.chosen, alpha);
      break;
    case AttackModel::kA2:
      result = GreedyAttackA2(s, sol.chosen, alpha);
      break;
    case AttackModel::kOptimal:
      throw std::invalid_argument(
          "local search is driven by a greedy attack (a1 or a2)");
  }
  if (evals != nullptr) *evals += result.evals + 1;
  return result.residual;
}

SolveReport SolveLs(const Scenario& s, const SolverSpec& spec) {
  if (spec.kind != SolverKind::kLs) {
    throw std::invalid_argument("SolveLs needs an ls solver spec");
  }
  if (spec.ls_attack == AttackModel::kOptimal) {
    throw std::invalid_argument(
        "local search is driven by a greedy attack (a1 or a2)");
  }
  const auto start = Clock::now();
  SolveReport init;
  if (spec.ls_init == LsInit::kObg) {
    init = SolveObg(s);
  } else {
    SolverSpec org;
    org.kind = SolverKind::kOrg;
    org.org_criteria = SortCriteria::kUnion;
    org.org_order = SortOrder::kIncreasing;
    init = SolveOrg(s, org);
  }

  SolveReport report;
  report.solution = std::move(init.solution);
  report.f_evals = init.f_evals;
  const int alpha = s.alpha();

  std::vector<std::vector<TrajectoryId>> candidates(s.num_robots());
  for (const Robot& r : s.robots()) candidates[r.id] = SortedCandidates(s, r.id);

  double z = EstimateResidual(s, report.solution, spec.ls_attack, alpha,
                              &report.f_evals);
  report.ls_estimates.push_back(z);
  FeasibleSolution neighbor = report.solution;
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t r = 0; r < candidates.size() && !improved; ++r) {
      const TrajectoryId current = report.solution.chosen[r];
      for (TrajectoryId p : candidates[r]) {
        if (p == current) continue;
        neighbor.chosen[r] = p;
        const double estimate = EstimateResidual(s, neighbor, spec.ls_attack,
                                                 alpha, &report.f_evals);
        if (estimate > z) {
          z = estimate;
          report.solution = neighbor;
          report.ls_estimates.push_back(z);
          ++report.ls_iterations;
          improved = true;
          break;
        }
      }
      neighbor.chosen[r] = report.solution.chosen[r];
    }
  }
  Stamp(report, start);
  return report;
}

SolveReport SolveTpg(const Scenario& s) {
  const auto start = Clock::now();
  SolveReport report;
  const size_t num_robots = s.num_robots();
  report.solution.chosen.assign(num_robots, -1);

  // Phase 1: bait the alpha robots with the strongest standalone trajectory.
  std::vector<TrajectoryId> best(num_robots);
  std::vector<double> best_value(num_robots);
  for (const Robot& r : s.robots()) {
    std::tie(best[r.id], best_value[r.id]) =
        ArgmaxTrajectory(s, r.id, [&](TrajectoryId p) {
          ++report.f_evals;
          return Standalone(s, p);
        });
  }
  std::vector<RobotId> by_value(num_robots);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_value.begin(), by_value.end(), [&](RobotId a, RobotId b) {
    return best_value[a] > best_value[b];
  });
  for (int i = 0; i < s.alpha(); ++i) {
    report.solution.chosen[by_value[i]] = best[by_value[i]];
  }

  // Phase 2: global greedy over the remaining robots, gains measured against
  // phase-2 picks only.
  std::vector<RobotId> open;
  for (RobotId r = 0; r < static_cast<RobotId>(num_robots); ++r) {
    if (report.solution.chosen[r] == -1) open.push_back(r);
  }
  CoverageCounter picked(s);
  while (!open.empty()) {
    size_t best_slot = 0;
    TrajectoryId best_p = -1;
    double best_gain = 0.0;
    for (size_t slot = 0; slot < open.size(); ++slot) {
      for (TrajectoryId p : s.robot(open[slot]).trajectories) {
        const double gain = picked.MarginalGain(p);
        if (best_p == -1 || gain > best_gain ||
            (gain == best_gain && p < best_p)) {
          best_p = p;
          best_gain = gain;
          best_slot = slot;
        }
      }
    }
    picked.Add(best_p);
    report.solution.chosen[open[best_slot]] = best_p;
    report.step_gains.push_back(best_gain);
    open.erase(open.begin() + static_cast<ptrdiff_t>(best_slot));
  }
  report.f_evals += picked.queries();
  Stamp(report, start);
  return report;
}

SolveReport Solve(const Scenario& s, const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::kObg:
      return SolveObg(s);
    case SolverKind::kOrg:
      return SolveOrg(s, spec);
    case SolverKind::kLs:
      return SolveLs(s, spec);
    case SolverKind::kTpg:
      return SolveTpg(s);
  }
  throw std::invalid_argument("unknown solver kind");
}

}  // namespace rcm
