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

#include "rcm/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

namespace rcm {

using nlohmann::json;

namespace {

// Moves items into a vector indexed by id, rejecting gaps and duplicates.
template <typename T>
std::vector<T> IndexById(std::vector<T> items, const char* what) {
  const size_t n = items.size();
  std::vector<T> out(n);
  std::vector<bool> seen(n, false);
  for (T& item : items) {
    if (item.id < 0 || static_cast<size_t>(item.id) >= n) {
      throw ValidationError(std::string(what) + " " + std::to_string(item.id) +
                            ": id outside dense range 0.." +
                            std::to_string(static_cast<long>(n) - 1));
    }
    if (seen[item.id]) {
      throw ValidationError(std::string(what) + " " + std::to_string(item.id) +
                            ": duplicate id");
    }
    seen[item.id] = true;
    const int id = item.id;
    out[id] = std::move(item);
  }
  return out;
}

}  // namespace

Scenario Scenario::Create(std::vector<Target> targets,
                          std::vector<Robot> robots,
                          std::vector<Trajectory> trajectories, int alpha) {
  Scenario s;
  s.targets_ = IndexById(std::move(targets), "target");
  s.robots_ = IndexById(std::move(robots), "robot");
  s.trajectories_ = IndexById(std::move(trajectories), "trajectory");

  for (const Target& t : s.targets_) {
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      throw ValidationError("target " + std::to_string(t.id) +
                            ": weight must be a finite non-negative number");
    }
    if (t.weight != 1.0) s.unit_weights_ = false;
  }

  const int num_targets = static_cast<int>(s.targets_.size());
  for (Trajectory& p : s.trajectories_) {
    std::sort(p.covers.begin(), p.covers.end());
    p.covers.erase(std::unique(p.covers.begin(), p.covers.end()),
                   p.covers.end());
    for (TargetId t : p.covers) {
      if (t < 0 || t >= num_targets) {
        throw ValidationError("trajectory " + std::to_string(p.id) +
                              ": covers unknown target " + std::to_string(t));
      }
    }
  }

  std::vector<int> owner(s.trajectories_.size(), -1);
  for (const Robot& r : s.robots_) {
    if (r.trajectories.empty()) {
      throw ValidationError("robot " + std::to_string(r.id) +
                            ": empty trajectory list");
    }
    for (TrajectoryId p : r.trajectories) {
      if (p < 0 || static_cast<size_t>(p) >= s.trajectories_.size()) {
        throw ValidationError("robot " + std::to_string(r.id) +
                              ": unknown trajectory " + std::to_string(p));
      }
      if (owner[p] != -1) {
        throw ValidationError("trajectory " + std::to_string(p) +
                              ": listed by robots " + std::to_string(owner[p]) +
                              " and " + std::to_string(r.id));
      }
      owner[p] = r.id;
    }
  }
  for (Trajectory& p : s.trajectories_) {
    if (owner[p.id] == -1) {
      throw ValidationError("trajectory " + std::to_string(p.id) +
                            ": not owned by any robot");
    }
    p.robot = owner[p.id];
  }

  if (alpha < 0 || static_cast<size_t>(alpha) > s.robots_.size()) {
    throw ValidationError("alpha " + std::to_string(alpha) +
                          ": must lie in 0.." +
                          std::to_string(s.robots_.size()));
  }
  s.alpha_ = alpha;
  return s;
}

double Scenario::total_weight() const {
  double sum = 0.0;
  for (const Target& t : targets_) sum += t.weight;
  return sum;
}

Scenario Scenario::WithAlpha(int alpha) const {
  if (alpha < 0 || static_cast<size_t>(alpha) > robots_.size()) {
    throw ValidationError("alpha " + std::to_string(alpha) +
                          ": must lie in 0.." + std::to_string(robots_.size()));
  }
  Scenario copy = *this;
  copy.alpha_ = alpha;
  return copy;
}

bool ValidateSolution(const Scenario& s, const FeasibleSolution& sol) {
  if (sol.chosen.size() != s.num_robots()) return false;
  for (size_t r = 0; r < sol.chosen.size(); ++r) {
    const TrajectoryId p = sol.chosen[r];
    if (p < 0 || static_cast<size_t>(p) >= s.num_trajectories()) return false;
    if (s.trajectory(p).robot != static_cast<RobotId>(r)) return false;
  }
  return true;
}

std::vector<TrajectoryId> SortedTrajectories(const FeasibleSolution& sol) {
  std::vector<TrajectoryId> ids = sol.chosen;
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

template <typename T>
T Field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field \"" + key + "\" has the wrong type");
  }
}

const json& ArrayField(const json& obj, const char* key,
                       const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    throw ParseError(where + ": field \"" + key + "\" must be an array");
  }
  return *it;
}

}  // namespace

Scenario LoadScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario: document must be an object");

  const int alpha = Field<int>(doc, "alpha", "scenario");

  std::vector<Target> targets;
  for (const json& t : ArrayField(doc, "targets", "scenario")) {
    if (!t.is_object()) throw ParseError("scenario: target must be an object");
    Target target;
    target.id = Field<int>(t, "id", "target");
    const std::string where = "target " + std::to_string(target.id);
    target.weight = t.contains("weight") ? Field<double>(t, "weight", where)
                                         : 1.0;
    targets.push_back(target);
  }

  std::vector<Robot> robots;
  std::vector<Trajectory> trajectories;
  for (const json& r : ArrayField(doc, "robots", "scenario")) {
    if (!r.is_object()) throw ParseError("scenario: robot must be an object");
    Robot robot;
    robot.id = Field<int>(r, "id", "robot");
    const std::string where = "robot " + std::to_string(robot.id);
    for (const json& p : ArrayField(r, "trajectories", where)) {
      if (!p.is_object()) {
        throw ParseError(where + ": trajectory must be an object");
      }
      Trajectory traj;
      traj.id = Field<int>(p, "id", where + " trajectory");
      traj.robot = robot.id;
      traj.covers = Field<std::vector<int>>(
          p, "covers", "trajectory " + std::to_string(traj.id));
      robot.trajectories.push_back(traj.id);
      trajectories.push_back(std::move(traj));
    }
    robots.push_back(std::move(robot));
  }
  return Scenario::Create(std::move(targets), std::move(robots),
                          std::move(trajectories), alpha);
}

Scenario LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return LoadScenario(buf.str());
}

std::string SerializeScenario(const Scenario& s) {
  json doc;
  doc["alpha"] = s.alpha();
  json targets = json::array();
  for (const Target& t : s.targets()) {
    targets.push_back({{"id", t.id}, {"weight", t.weight}});
  }
  doc["targets"] = std::move(targets);
  json robots = json::array();
  for (const Robot& r : s.robots()) {
    json trajs = json::array();
    for (TrajectoryId p : r.trajectories) {
      trajs.push_back({{"id", p}, {"covers", s.trajectory(p).covers}});
    }
    robots.push_back({{"id", r.id}, {"trajectories", std::move(trajs)}});
  }
  doc["robots"] = std::move(robots);
  return doc.dump() + "\n";
}

FeasibleSolution ParseSolution(std::string_view text, size_t num_robots) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("solution: expected an object of robot -> trajectory");
  }
  FeasibleSolution sol;
  sol.chosen.assign(num_robots, -1);
  for (const auto& [key, value] : doc.items()) {
    size_t robot = 0;
    try {
      size_t used = 0;
      robot = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("solution: robot key \"" + key + "\" is not an integer");
    }
    if (!value.is_number_integer()) {
      throw ParseError("solution: robot " + key +
                       " must map to an integer trajectory id");
    }
    if (robot >= sol.chosen.size()) sol.chosen.resize(robot + 1, -1);
    sol.chosen[robot] = value.get<int>();
  }
  return sol;
}

std::string SerializeSolution(const FeasibleSolution& sol) {
  // Written by hand to keep robot order; json objects sort keys as strings.
  std::string out = "{";
  for (size_t r = 0; r < sol.chosen.size(); ++r) {
    if (r > 0) out += ",";
    out += "\"" + std::to_string(r) + "\":" + std::to_string(sol.chosen[r]);
  }
  return out + "}";
}

Scenario TinyScenario() {
  std::vector<Target> targets;
  for (int t = 0; t < 6; ++t) targets.push_back({t, 1.0});
  std::vector<Trajectory> trajs = {
      {0, 0, {0, 1, 2}}, {1, 0, {0}}, {2, 1, {2, 3}},
      {3, 1, {3, 4}},    {4, 2, {4, 5}}, {5, 2, {5}},
  };
  std::vector<Robot> robots = {{0, {0, 1}}, {1, {2, 3}}, {2, {4, 5}}};
  return Scenario::Create(std::move(targets), std::move(robots),
                          std::move(trajs), 1);
}

}  // namespace rcm
