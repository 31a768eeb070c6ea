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
// Problem instances for resilient coverage maximization.
//
// A Scenario holds weighted targets, robots, and every robot's candidate
// trajectories together with the set of targets each trajectory covers.
// All ids are dense indices: targets 0..T-1, robots 0..R-1, trajectories
// 0..P-1 (global across robots). Scenarios are immutable once built.
//

#ifndef RCM_SCENARIO_H_
#define RCM_SCENARIO_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rcm {

using TargetId = int;
using RobotId = int;
using TrajectoryId = int;

// Malformed scenario or solution document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed document that violates a Scenario invariant. The message names
// the offending entity.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Target {
  TargetId id = 0;
  double weight = 1.0;

  friend bool operator==(const Target&, const Target&) = default;
};

struct Trajectory {
  TrajectoryId id = 0;
  RobotId robot = 0;
  // Sorted, duplicate-free target ids.
  std::vector<TargetId> covers;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct Robot {
  RobotId id = 0;
  // Candidate trajectories in document order. Never empty.
  std::vector<TrajectoryId> trajectories;

  friend bool operator==(const Robot&, const Robot&) = default;
};

class Scenario {
 public:
  Scenario() = default;

  // Validates and builds a scenario. `targets`, `robots` and `trajectories`
  // may arrive in any order; they are stored indexed by id. Trajectory cover
  // lists are sorted and deduplicated. Throws ValidationError.
  static Scenario Create(std::vector<Target> targets, std::vector<Robot> robots,
                         std::vector<Trajectory> trajectories, int alpha);

  const std::vector<Target>& targets() const { return targets_; }
  const std::vector<Robot>& robots() const { return robots_; }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }
  int alpha() const { return alpha_; }

  size_t num_targets() const { return targets_.size(); }
  size_t num_robots() const { return robots_.size(); }
  size_t num_trajectories() const { return trajectories_.size(); }

  const Target& target(TargetId id) const { return targets_.at(id); }
  const Robot& robot(RobotId id) const { return robots_.at(id); }
  const Trajectory& trajectory(TrajectoryId id) const {
    return trajectories_.at(id);
  }
  double weight(TargetId id) const { return targets_[id].weight; }
  std::span<const TargetId> covers(TrajectoryId id) const {
    return trajectories_[id].covers;
  }

  // True when every target weighs exactly 1.
  bool unit_weights() const { return unit_weights_; }
  double total_weight() const;

  // Same instance with a different attack size. Throws ValidationError when
  // alpha is out of range.
  Scenario WithAlpha(int alpha) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.alpha_ == b.alpha_ && a.targets_ == b.targets_ &&
           a.robots_ == b.robots_ && a.trajectories_ == b.trajectories_;
  }

 private:
  std::vector<Target> targets_;
  std::vector<Robot> robots_;
  std::vector<Trajectory> trajectories_;
  int alpha_ = 0;
  bool unit_weights_ = true;
};

// One trajectory per robot: chosen[r] is the trajectory assigned to robot r.
struct FeasibleSolution {
  std::vector<TrajectoryId> chosen;

  friend bool operator==(const FeasibleSolution&,
                         const FeasibleSolution&) = default;
};

// True iff `sol` assigns exactly one owned trajectory to every robot.
bool ValidateSolution(const Scenario& s, const FeasibleSolution& sol);

// Chosen trajectory ids sorted ascending.
std::vector<TrajectoryId> SortedTrajectories(const FeasibleSolution& sol);

// Scenario JSON document:
//   { "alpha": int,
//     "targets": [ { "id": int, "weight": number } ],
//     "robots":  [ { "id": int,
//                    "trajectories": [ { "id": int, "covers": [int] } ] } ] }
// Throws ParseError or ValidationError.
Scenario LoadScenario(std::string_view text);
Scenario LoadScenarioFile(const std::string& path);
std::string SerializeScenario(const Scenario& s);

// Solution JSON document: an object mapping robot id (as a string key) to a
// trajectory id, e.g. {"0":0,"1":2,"2":4}. Robots missing from the object
// make the result fail ValidateSolution; ids are checked only for syntax.
FeasibleSolution ParseSolution(std::string_view text, size_t num_robots);
std::string SerializeSolution(const FeasibleSolution& sol);

// The shared three-robot fixture used across tests and examples.
Scenario TinyScenario();

}  // namespace rcm

#endif  // RCM_SCENARIO_H_
