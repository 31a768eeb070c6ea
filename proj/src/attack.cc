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

#include "rcm/attack.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "rcm/coverage.h"

namespace rcm {

namespace {

std::vector<TrajectoryId> SortedUnique(std::span<const TrajectoryId> sol) {
  std::vector<TrajectoryId> ids(sol.begin(), sol.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

int ClampedSize(int k, size_t n) {
  if (k < 0) throw std::invalid_argument("attack size must be non-negative");
  return static_cast<int>(std::min<size_t>(static_cast<size_t>(k), n));
}

std::vector<TrajectoryId> Without(const std::vector<TrajectoryId>& ids,
                                  const std::vector<char>& drop) {
  std::vector<TrajectoryId> out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (!drop[i]) out.push_back(ids[i]);
  }
  return out;
}

std::vector<TrajectoryId> Picked(const std::vector<TrajectoryId>& ids,
                                 const std::vector<char>& pick) {
  std::vector<TrajectoryId> out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (pick[i]) out.push_back(ids[i]);
  }
  return out;
}

}  // namespace

std::string_view AttackModelName(AttackModel model) {
  switch (model) {
    case AttackModel::kOptimal:
      return "optimal";
    case AttackModel::kA1:
      return "a1";
    case AttackModel::kA2:
      return "a2";
  }
  return "?";
}

AttackModel ParseAttackModel(std::string_view name) {
  if (name == "optimal") return AttackModel::kOptimal;
  if (name == "a1") return AttackModel::kA1;
  if (name == "a2") return AttackModel::kA2;
  throw std::invalid_argument("unknown attack model \"" + std::string(name) +
                              "\" (expected optimal, a1 or a2)");
}

uint64_t BinomialSaturating(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<uint64_t>::max()) {
      return std::numeric_limits<uint64_t>::max();
    }
  }
  return static_cast<uint64_t>(result);
}

AttackResult OptimalAttack(const Scenario& s, std::span<const TrajectoryId> sol,
                           int k, uint64_t budget) {
  const std::vector<TrajectoryId> ids = SortedUnique(sol);
  const size_t n = ids.size();
  const int m = ClampedSize(k, n);
  const uint64_t subsets = BinomialSaturating(n, m);
  if (subsets > budget) {
    throw BudgetExceeded("optimal attack needs C(" + std::to_string(n) + ", " +
                         std::to_string(m) + ") = " + std::to_string(subsets) +
                         " subsets, budget is " + std::to_string(budget));
  }

  const CoverageBitsets bits(s);
  const size_t words = bits.words();
  std::vector<uint64_t> mask(words);

  // Lexicographic walk over index combinations.
  std::vector<int> combo(m);
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<char> removed(n, 0);
  AttackResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int64_t evals = 0;
  while (true) {
    std::fill(removed.begin(), removed.end(), 0);
    for (int i : combo) removed[i] = 1;
    std::fill(mask.begin(), mask.end(), 0);
    for (size_t i = 0; i < n; ++i) {
      if (removed[i]) continue;
      const auto row = bits.mask(ids[i]);
      for (size_t w = 0; w < words; ++w) mask[w] |= row[w];
    }
    const double value = bits.Value(mask);
    ++evals;
    if (value < best.residual) {
      best.residual = value;
      best.removed.clear();
      for (int i : combo) best.removed.push_back(ids[i]);
    }

    int i = m - 1;
    while (i >= 0 && combo[i] == static_cast<int>(n) - m + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < m; ++j) combo[j] = combo[j - 1] + 1;
  }
  best.evals = evals;
  return best;
}

AttackResult GreedyAttackA1(const Scenario& s,
                            std::span<const TrajectoryId> sol, int k) {
  const std::vector<TrajectoryId> ids = SortedUnique(sol);
  const int m = ClampedSize(k, ids.size());
  CoverageCounter attacked(s);
  std::vector<char> taken(ids.size(), 0);
  for (int step = 0; step < m; ++step) {
    int best = -1;
    double best_gain = -1.0;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (taken[i]) continue;
      const double gain = attacked.MarginalGain(ids[i]);
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(i);
      }
    }
    taken[best] = 1;
    attacked.Add(ids[best]);
  }
  AttackResult result;
  result.removed = Picked(ids, taken);
  result.residual = CoverageValue(s, Without(ids, taken));
  result.evals = attacked.queries();
  return result;
}

AttackResult GreedyAttackA2(const Scenario& s,
                            std::span<const TrajectoryId> sol, int k) {
  const std::vector<TrajectoryId> ids = SortedUnique(sol);
  const int m = ClampedSize(k, ids.size());
  CoverageCounter survivors(s);
  for (TrajectoryId p : ids) survivors.Add(p);
  std::vector<char> dropped(ids.size(), 0);
  for (int step = 0; step < m; ++step) {
    int best = -1;
    double best_loss = -1.0;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (dropped[i]) continue;
      const double loss = survivors.MarginalLoss(ids[i]);
      if (loss > best_loss) {
        best_loss = loss;
        best = static_cast<int>(i);
      }
    }
    dropped[best] = 1;
    survivors.Remove(ids[best]);
  }
  AttackResult result;
  result.removed = Picked(ids, dropped);
  result.residual = survivors.RecomputeValue();
  result.evals = survivors.queries();
  return result;
}

AttackResult NaiveGreedyAttackA1(const Scenario& s,
                                 std::span<const TrajectoryId> sol, int k) {
  const std::vector<TrajectoryId> ids = SortedUnique(sol);
  const int m = ClampedSize(k, ids.size());
  std::vector<char> taken(ids.size(), 0);
  int64_t evals = 0;
  for (int step = 0; step < m; ++step) {
    std::vector<TrajectoryId> x = Picked(ids, taken);
    const double base = CoverageValue(s, x);
    ++evals;
    int best = -1;
    double best_gain = -1.0;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (taken[i]) continue;
      x.push_back(ids[i]);
      const double gain = CoverageValue(s, x) - base;
      ++evals;
      x.pop_back();
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(i);
      }
    }
    taken[best] = 1;
  }
  AttackResult result;
  result.removed = Picked(ids, taken);
  result.residual = CoverageValue(s, Without(ids, taken));
  result.evals = evals + 1;
  return result;
}

AttackResult NaiveGreedyAttackA2(const Scenario& s,
                                 std::span<const TrajectoryId> sol, int k) {
  const std::vector<TrajectoryId> ids = SortedUnique(sol);
  const int m = ClampedSize(k, ids.size());
  std::vector<char> dropped(ids.size(), 0);
  int64_t evals = 0;
  for (int step = 0; step < m; ++step) {
    const double base = CoverageValue(s, Without(ids, dropped));
    ++evals;
    int best = -1;
    double best_loss = -1.0;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (dropped[i]) continue;
      dropped[i] = 1;
      const double loss = base - CoverageValue(s, Without(ids, dropped));
      ++evals;
      dropped[i] = 0;
      if (loss > best_loss) {
        best_loss = loss;
        best = static_cast<int>(i);
      }
    }
    dropped[best] = 1;
  }
  AttackResult result;
  result.removed = Picked(ids, dropped);
  result.residual = CoverageValue(s, Without(ids, dropped));
  result.evals = evals + 1;
  return result;
}

AttackResult ResidualCoverage(const Scenario& s,
                              std::span<const TrajectoryId> sol,
                              AttackModel model, int k, uint64_t budget) {
  switch (model) {
    case AttackModel::kOptimal:
      return OptimalAttack(s, sol, k, budget);
    case AttackModel::kA1:
      return GreedyAttackA1(s, sol, k);
    case AttackModel::kA2:
      return GreedyAttackA2(s, sol, k);
  }
  throw std::invalid_argument("unknown attack model");
}

}  // namespace rcm
