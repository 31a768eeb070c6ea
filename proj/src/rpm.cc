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

#include "rcm/rpm.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "rcm/attack.h"
#include "rcm/coverage.h"
#include "rcm/random.h"

namespace rcm {

namespace {

Cell Offset(Heading h) {
  switch (h) {
    case Heading::kNorth:
      return {0, -1};
    case Heading::kEast:
      return {1, 0};
    case Heading::kSouth:
      return {0, 1};
    case Heading::kWest:
      return {-1, 0};
  }
  return {0, 0};
}

void CheckConfig(const RpmConfig& cfg) {
  if (cfg.width <= 0 || cfg.height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (cfg.n_obstacles < 0 || cfg.n_robots < 0 || cfg.vis_range < 0 ||
      cfg.traj_len < 0 || cfg.l_max < 0) {
    throw std::invalid_argument("grid counts must be non-negative");
  }
  if (cfg.n_obstacles > 0 &&
      !(cfg.min_obstacle_fraction > 0.0 &&
        cfg.min_obstacle_fraction <= cfg.max_obstacle_fraction &&
        cfg.max_obstacle_fraction < 1.0)) {
    throw std::invalid_argument("obstacle fraction range must lie in (0, 1)");
  }
  if (cfg.obstacle_min_side < 1 ||
      cfg.obstacle_max_side < cfg.obstacle_min_side) {
    throw std::invalid_argument("bad obstacle side range");
  }
}

}  // namespace

GridWorld GridWorld::Create(const RpmConfig& cfg) {
  CheckConfig(cfg);
  Rng rng(cfg.seed);
  GridWorld w;
  w.cfg_ = cfg;
  const size_t cells = static_cast<size_t>(cfg.width) * cfg.height;
  w.latency_.assign(cells, 0);

  const int max_w = std::min(cfg.obstacle_max_side, cfg.width);
  const int max_h = std::min(cfg.obstacle_max_side, cfg.height);
  const int min_w = std::min(cfg.obstacle_min_side, max_w);
  const int min_h = std::min(cfg.obstacle_min_side, max_h);
  bool placed = false;
  for (int attempt = 0; attempt < cfg.max_retries && !placed; ++attempt) {
    w.obstacles_.assign(cells, 0);
    for (int i = 0; i < cfg.n_obstacles; ++i) {
      const int rw = static_cast<int>(rng.Between(min_w, max_w));
      const int rh = static_cast<int>(rng.Between(min_h, max_h));
      const int x0 = static_cast<int>(rng.Between(0, cfg.width - rw));
      const int y0 = static_cast<int>(rng.Between(0, cfg.height - rh));
      for (int y = y0; y < y0 + rh; ++y) {
        for (int x = x0; x < x0 + rw; ++x) w.obstacles_[w.Index({x, y})] = 1;
      }
    }
    const double fraction = w.obstructed_fraction();
    placed = cfg.n_obstacles == 0 || (fraction >= cfg.min_obstacle_fraction &&
                                      fraction <= cfg.max_obstacle_fraction);
  }
  if (!placed) {
    throw std::runtime_error("obstacle placement failed after " +
                             std::to_string(cfg.max_retries) + " attempts");
  }

  std::vector<int> free_cells;
  for (size_t i = 0; i < cells; ++i) {
    if (!w.obstacles_[i]) free_cells.push_back(static_cast<int>(i));
  }
  if (free_cells.size() < static_cast<size_t>(cfg.n_robots)) {
    throw std::runtime_error("not enough free cells for " +
                             std::to_string(cfg.n_robots) + " robots");
  }
  // Partial Fisher-Yates: the first n_robots cells are a uniform sample.
  for (int r = 0; r < cfg.n_robots; ++r) {
    const size_t pick =
        r + static_cast<size_t>(rng.Below(free_cells.size() - r));
    std::swap(free_cells[r], free_cells[pick]);
    RobotState robot;
    robot.pos = w.CellAt(free_cells[r]);
    robot.heading = kHeadings[rng.Below(4)];
    w.robots_.push_back(robot);
  }
  return w;
}

GridWorld GridWorld::FromMask(const RpmConfig& cfg,
                              std::vector<uint8_t> obstacles,
                              std::vector<RobotState> robots) {
  CheckConfig(cfg);
  GridWorld w;
  w.cfg_ = cfg;
  const size_t cells = static_cast<size_t>(cfg.width) * cfg.height;
  if (obstacles.size() != cells) {
    throw std::invalid_argument("obstacle mask has the wrong size");
  }
  w.obstacles_ = std::move(obstacles);
  w.latency_.assign(cells, 0);
  for (const RobotState& r : robots) {
    if (!w.IsFree(r.pos)) {
      throw std::invalid_argument("robot placed on a blocked cell");
    }
  }
  w.robots_ = std::move(robots);
  return w;
}

int GridWorld::alive_robots() const {
  return static_cast<int>(std::count_if(
      robots_.begin(), robots_.end(),
      [](const RobotState& r) { return r.alive; }));
}

double GridWorld::obstructed_fraction() const {
  const auto blocked = std::count(obstacles_.begin(), obstacles_.end(), 1);
  return static_cast<double>(blocked) / static_cast<double>(obstacles_.size());
}

double GridWorld::mean_latency() const {
  double sum = 0.0;
  size_t free = 0;
  for (size_t i = 0; i < latency_.size(); ++i) {
    if (obstacles_[i]) continue;
    sum += latency_[i];
    ++free;
  }
  return free == 0 ? 0.0 : sum / static_cast<double>(free);
}

std::vector<Cell> SupercoverLine(Cell from, Cell to) {
  const int nx = std::abs(to.x - from.x);
  const int ny = std::abs(to.y - from.y);
  const int sx = to.x > from.x ? 1 : -1;
  const int sy = to.y > from.y ? 1 : -1;
  std::vector<Cell> out = {from};
  Cell p = from;
  int ix = 0;
  int iy = 0;
  while (ix < nx || iy < ny) {
    // Compares when the segment crosses the next vertical and the next
    // horizontal cell boundary.
    const long decision = static_cast<long>(1 + 2 * ix) * ny -
                          static_cast<long>(1 + 2 * iy) * nx;
    if (decision == 0) {
      out.push_back({p.x + sx, p.y});
      out.push_back({p.x, p.y + sy});
      p.x += sx;
      p.y += sy;
      ++ix;
      ++iy;
    } else if (decision < 0) {
      p.x += sx;
      ++ix;
    } else {
      p.y += sy;
      ++iy;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<int> GridWorld::VisibleCells(Cell pos) const {
  std::vector<int> out;
  const int range = cfg_.vis_range;
  const long range2 = static_cast<long>(range) * range;
  for (int dy = -range; dy <= range; ++dy) {
    for (int dx = -range; dx <= range; ++dx) {
      if (static_cast<long>(dx) * dx + static_cast<long>(dy) * dy > range2) {
        continue;
      }
      const Cell c{pos.x + dx, pos.y + dy};
      if (!IsFree(c)) continue;
      bool blocked = false;
      const std::vector<Cell> line = SupercoverLine(pos, c);
      for (size_t i = 1; i + 1 < line.size() && !blocked; ++i) {
        // Corner-adjacent cells may fall outside the grid; they block nothing.
        if (InBounds(line[i]) && IsObstacle(line[i])) blocked = true;
      }
      if (!blocked) out.push_back(Index(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cell> GridWorld::Path(Cell start, Heading dir) const {
  const Cell step = Offset(dir);
  std::vector<Cell> path = {start};
  Cell c = start;
  for (int i = 0; i < cfg_.traj_len; ++i) {
    const Cell next{c.x + step.x, c.y + step.y};
    if (!IsFree(next)) break;
    c = next;
    path.push_back(c);
  }
  return path;
}

namespace {

// Per-round memo of visibility sets.
class VisibilityCache {
 public:
  explicit VisibilityCache(const GridWorld& w) : world_(w) {}

  const std::vector<int>& Get(Cell c) {
    const int key = world_.Index(c);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, world_.VisibleCells(c)).first;
    }
    return it->second;
  }

  std::vector<int> SeenAlong(const std::vector<Cell>& path) {
    std::vector<int> seen;
    for (const Cell& c : path) {
      const std::vector<int>& v = Get(c);
      seen.insert(seen.end(), v.begin(), v.end());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return seen;
  }

 private:
  const GridWorld& world_;
  std::unordered_map<int, std::vector<int>> cache_;
};

RoundScenario BuildWithCache(const GridWorld& w, int alpha,
                             VisibilityCache& cache) {
  RoundScenario out;
  std::vector<int> target_of(static_cast<size_t>(w.width()) * w.height(), -1);
  std::vector<Target> targets;
  for (int i = 0; i < static_cast<int>(target_of.size()); ++i) {
    const Cell c = w.CellAt(i);
    if (w.IsObstacle(c) || w.latency(c) <= 0) continue;
    target_of[i] = static_cast<int>(targets.size());
    targets.push_back({static_cast<TargetId>(targets.size()),
                       static_cast<double>(w.latency(c))});
    out.target_cells.push_back(i);
  }

  std::vector<Robot> robots;
  std::vector<Trajectory> trajectories;
  for (size_t ri = 0; ri < w.robots().size(); ++ri) {
    const RobotState& state = w.robots()[ri];
    if (!state.alive) continue;
    Robot robot{static_cast<RobotId>(robots.size()), {}};
    for (Heading h : kHeadings) {
      Trajectory traj;
      traj.id = static_cast<TrajectoryId>(trajectories.size());
      traj.robot = robot.id;
      std::vector<Cell> path = w.Path(state.pos, h);
      for (int cell : cache.SeenAlong(path)) {
        if (target_of[cell] >= 0) traj.covers.push_back(target_of[cell]);
      }
      robot.trajectories.push_back(traj.id);
      trajectories.push_back(std::move(traj));
      out.paths.push_back(std::move(path));
      out.headings.push_back(h);
    }
    robots.push_back(std::move(robot));
    out.robot_index.push_back(static_cast<int>(ri));
  }
  out.scenario = Scenario::Create(std::move(targets), std::move(robots),
                                  std::move(trajectories), alpha);
  return out;
}

}  // namespace

RoundScenario BuildRoundScenario(const GridWorld& w, int alpha) {
  VisibilityCache cache(w);
  return BuildWithCache(w, alpha, cache);
}

std::string_view FailModelName(FailModel model) {
  switch (model) {
    case FailModel::kNone:
      return "none";
    case FailModel::kA2:
      return "a2";
    case FailModel::kOptimal:
      return "optimal";
  }
  return "?";
}

FailModel ParseFailModel(std::string_view name) {
  if (name == "none") return FailModel::kNone;
  if (name == "a2") return FailModel::kA2;
  if (name == "optimal") return FailModel::kOptimal;
  throw std::invalid_argument("unknown failure model \"" + std::string(name) +
                              "\" (expected none, a2 or optimal)");
}

struct RpmStepper {
  static RoundReport Run(GridWorld& w, const SolverSpec& solver, int alpha,
                         FailModel fail_model, int fail_size) {
    const int alive = w.alive_robots();
    if (fail_size < 0 || fail_size > alive) {
      throw std::invalid_argument("fail_size " + std::to_string(fail_size) +
                                  " exceeds the " + std::to_string(alive) +
                                  " active robots");
    }
    if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
    VisibilityCache cache(w);
    // Plan against at most the robots still active.
    const RoundScenario rs = BuildWithCache(w, std::min(alpha, alive), cache);
    const Scenario& s = rs.scenario;
    const SolveReport solved = Solve(s, solver);
    const FeasibleSolution& sol = solved.solution;

    RoundReport report;
    report.round = w.round_;
    report.solver = SolverName(solver);
    report.alpha = alpha;
    report.f_evals = solved.f_evals;
    report.planned = CoverageValue(s, sol.chosen);

    std::vector<TrajectoryId> removed;
    if (fail_model == FailModel::kA2) {
      removed = GreedyAttackA2(s, sol.chosen, fail_size).removed;
    } else if (fail_model == FailModel::kOptimal) {
      removed = OptimalAttack(s, sol.chosen, fail_size).removed;
    }
    report.fail_size = fail_model == FailModel::kNone ? 0 : fail_size;

    std::vector<char> failed(s.num_robots(), 0);
    for (TrajectoryId p : removed) failed[s.trajectory(p).robot] = 1;

    std::vector<char> seen(w.latency_.size(), 0);
    for (size_t r = 0; r < s.num_robots(); ++r) {
      RobotState& robot = w.robots_[rs.robot_index[r]];
      if (failed[r]) {
        if (w.cfg_.permanent_failures) robot.alive = false;
        continue;
      }
      const TrajectoryId p = sol.chosen[r];
      const std::vector<Cell>& path = rs.paths[p];
      for (int cell : cache.SeenAlong(path)) seen[cell] = 1;
      robot.pos = path.back();
      robot.heading = rs.headings[p];
      ++report.survivors;
    }

    double realized = 0.0;
    for (size_t i = 0; i < w.latency_.size(); ++i) {
      if (w.obstacles_[i]) continue;
      if (seen[i]) {
        realized += w.latency_[i];
        w.latency_[i] = 0;
      } else {
        w.latency_[i] = std::min(w.latency_[i] + 1, w.cfg_.l_max);
      }
    }
    report.realized = realized;
    report.mean_latency = w.mean_latency();
    ++w.round_;
    return report;
  }
};

RoundReport Step(GridWorld& w, const SolverSpec& solver, int alpha,
                 FailModel fail_model, int fail_size) {
  return RpmStepper::Run(w, solver, alpha, fail_model, fail_size);
}

std::string RoundCsvHeader() {
  return "round,solver,alpha,fail_size,planned,realized,mean_latency\n";
}

std::string RoundCsvRow(const RoundReport& r) {
  return fmt::format("{},{},{},{},{},{},{}\n", r.round, r.solver, r.alpha,
                     r.fail_size, r.planned, r.realized, r.mean_latency);
}

std::string LatencyPgm(const GridWorld& w) {
  std::string out = fmt::format("P5\n{} {}\n255\n", w.width(), w.height());
  const int l_max = std::max(w.config().l_max, 1);
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      const Cell c{x, y};
      int value = 255;
      if (!w.IsObstacle(c)) {
        value = (w.latency(c) * 254 + l_max / 2) / l_max;
      }
      out.push_back(static_cast<char>(value));
    }
  }
  return out;
}

}  // namespace rcm
