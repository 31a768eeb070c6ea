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

#include "rcm/exact.h"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "rcm/coverage.h"

namespace rcm {

namespace {

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a * b;
}

// All k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> Combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    out.push_back(combo);
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

void CollectSubsets(int num_robots, int alpha, std::vector<RobotId>& current,
                    std::vector<std::vector<RobotId>>& out) {
  out.push_back(current);
  if (static_cast<int>(current.size()) == alpha) return;
  const int first = current.empty() ? 0 : current.back() + 1;
  for (int r = first; r < num_robots; ++r) {
    current.push_back(r);
    CollectSubsets(num_robots, alpha, current, out);
    current.pop_back();
  }
}

// Appends `terms` to `out`, wrapping every few terms to keep lines short.
void AppendTerms(std::string& out, const std::vector<std::string>& terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % 8 == 0) out += "\n   ";
    const std::string& term = terms[i];
    if (term[0] == '-') {
      out += i == 0 ? "- " : " - ";
      out += term.substr(1);
    } else {
      out += i == 0 ? "" : " + ";
      out += term;
    }
  }
}

std::string Coefficient(double weight) {
  return weight == 1.0 ? std::string() : fmt::format("{} ", weight);
}

}  // namespace

ExactResult SolveBruteforce(const Scenario& s, uint64_t budget) {
  const int num_robots = static_cast<int>(s.num_robots());
  const int alpha = s.alpha();
  uint64_t solutions = 1;
  for (const Robot& r : s.robots()) {
    solutions = SaturatingMul(solutions, r.trajectories.size());
  }
  const uint64_t attacks = BinomialSaturating(num_robots, alpha);
  const uint64_t work = SaturatingMul(solutions, attacks);
  if (work > budget) {
    throw BudgetExceeded("brute force needs " + std::to_string(solutions) +
                         " solutions x " + std::to_string(attacks) +
                         " attacks = " + std::to_string(work) +
                         " evaluations, budget is " + std::to_string(budget));
  }

  const CoverageBitsets bits(s);
  const size_t words = bits.words();
  // Survivor sets: the complement of every alpha-subset of robots.
  std::vector<std::vector<int>> survivor_sets;
  for (const std::vector<int>& hit : Combinations(num_robots, alpha)) {
    std::vector<char> removed(num_robots, 0);
    for (int r : hit) removed[r] = 1;
    std::vector<int> alive;
    for (int r = 0; r < num_robots; ++r) {
      if (!removed[r]) alive.push_back(r);
    }
    survivor_sets.push_back(std::move(alive));
  }

  ExactResult best;
  best.residual = -1.0;
  std::vector<size_t> choice(num_robots, 0);
  FeasibleSolution current;
  current.chosen.resize(num_robots);
  std::vector<uint64_t> mask(words);
  int64_t enumerated = 0;
  while (true) {
    for (int r = 0; r < num_robots; ++r) {
      current.chosen[r] = s.robot(r).trajectories[choice[r]];
    }
    ++enumerated;
    // Worst case over attacks; stop once this solution cannot beat the best.
    double worst = std::numeric_limits<double>::infinity();
    for (const std::vector<int>& alive : survivor_sets) {
      std::fill(mask.begin(), mask.end(), 0);
      for (int r : alive) {
        const auto row = bits.mask(current.chosen[r]);
        for (size_t w = 0; w < words; ++w) mask[w] |= row[w];
      }
      worst = std::min(worst, bits.Value(mask));
      if (worst <= best.residual) break;
    }
    if (worst > best.residual) {
      best.residual = worst;
      best.solution = current;
    }

    int r = num_robots - 1;
    while (r >= 0 && choice[r] + 1 == s.robot(r).trajectories.size()) {
      choice[r] = 0;
      --r;
    }
    if (r < 0) break;
    ++choice[r];
  }
  best.enumerated = enumerated;
  return best;
}

std::vector<std::vector<RobotId>> AttackSubsets(int num_robots, int alpha) {
  std::vector<std::vector<RobotId>> out;
  std::vector<RobotId> current;
  CollectSubsets(num_robots, alpha, current, out);
  return out;
}

std::string ExportIlp(const Scenario& s, uint64_t budget) {
  const int num_robots = static_cast<int>(s.num_robots());
  uint64_t count = 0;
  for (int k = 0; k <= s.alpha(); ++k) {
    count = count + BinomialSaturating(num_robots, k);
    if (count > budget) {
      throw BudgetExceeded("ILP export needs more than " +
                           std::to_string(budget) + " attack subsets");
    }
  }
  const std::vector<std::vector<RobotId>> attacks =
      AttackSubsets(num_robots, s.alpha());

  bool integral = true;
  for (const Target& t : s.targets()) {
    if (t.weight != std::floor(t.weight)) integral = false;
  }

  // Trajectories covering each target, ascending.
  std::vector<std::vector<TrajectoryId>> coverers(s.num_targets());
  for (const Trajectory& p : s.trajectories()) {
    for (TargetId t : p.covers) coverers[t].push_back(p.id);
  }

  std::string out;
  out += fmt::format(
      "\\ Resilient coverage maximization\n"
      "\\ robots={} trajectories={} targets={} alpha={} attacks={}\n",
      num_robots, s.num_trajectories(), s.num_targets(), s.alpha(),
      attacks.size());
  out += "Maximize\n obj: z\nSubject To\n";

  for (const Robot& r : s.robots()) {
    std::vector<std::string> terms;
    for (TrajectoryId p : r.trajectories) terms.push_back(fmt::format("x_p{}", p));
    out += fmt::format(" one_r{}: ", r.id);
    AppendTerms(out, terms);
    out += " = 1\n";
  }

  std::vector<std::string> fixed_zero;
  for (size_t w = 0; w < attacks.size(); ++w) {
    std::vector<char> failed(num_robots, 0);
    for (RobotId r : attacks[w]) failed[r] = 1;
    for (size_t t = 0; t < s.num_targets(); ++t) {
      std::vector<std::string> terms;
      for (TrajectoryId p : coverers[t]) {
        if (!failed[s.trajectory(p).robot]) {
          terms.push_back(fmt::format("x_p{}", p));
        }
      }
      const std::string y = fmt::format("y_t{}_w{}", t, w);
      if (terms.empty()) fixed_zero.push_back(y);
      terms.push_back("-" + y);
      out += fmt::format(" cover_t{}_w{}: ", t, w);
      AppendTerms(out, terms);
      out += " >= 0\n";
    }
  }

  for (size_t w = 0; w < attacks.size(); ++w) {
    std::vector<std::string> terms;
    for (const Target& t : s.targets()) {
      if (t.weight == 0.0) continue;
      terms.push_back(Coefficient(t.weight) + fmt::format("y_t{}_w{}", t.id, w));
    }
    terms.push_back("-z");
    out += fmt::format(" value_w{}: ", w);
    AppendTerms(out, terms);
    out += " >= 0\n";
  }

  out += "Bounds\n";
  for (const std::string& y : fixed_zero) out += " " + y + " = 0\n";
  out += " z >= 0\n";

  out += "Binaries\n";
  for (const Trajectory& p : s.trajectories()) {
    out += fmt::format(" x_p{}\n", p.id);
  }
  for (size_t w = 0; w < attacks.size(); ++w) {
    for (size_t t = 0; t < s.num_targets(); ++t) {
      out += fmt::format(" y_t{}_w{}\n", t, w);
    }
  }
  if (integral) out += "Generals\n z\n";
  out += "End\n";
  return out;
}

}  // namespace rcm
