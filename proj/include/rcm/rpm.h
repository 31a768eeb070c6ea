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
// Resilient persistent monitoring on an occupancy grid.
//
// Every free cell carries a latency in [0, l_max]: cells seen by a robot this
// round drop to 0, all others grow by one up to l_max. Each round becomes a
// weighted coverage instance (targets are the cells with positive latency,
// weighted by latency) over four straight candidate paths per robot, is
// solved by one of the heuristic solvers, and is then executed with some
// robots failing.
//

#ifndef RCM_RPM_H_
#define RCM_RPM_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/scenario.h"
#include "rcm/solvers.h"

namespace rcm {

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Absolute directions; north is decreasing y.
enum class Heading { kNorth, kEast, kSouth, kWest };
inline constexpr std::array<Heading, 4> kHeadings = {
    Heading::kNorth, Heading::kEast, Heading::kSouth, Heading::kWest};

struct RpmConfig {
  int width = 200;
  int height = 200;
  int n_obstacles = 100;
  // Accepted obstructed fraction; checked only when n_obstacles > 0.
  double min_obstacle_fraction = 0.13;
  double max_obstacle_fraction = 0.17;
  int obstacle_min_side = 4;
  int obstacle_max_side = 12;
  int n_robots = 64;
  int vis_range = 15;
  int l_max = 100;
  // Cells per candidate path.
  int traj_len = 5;
  // Failed robots never come back.
  bool permanent_failures = false;
  int max_retries = 1000;
  uint64_t seed = 1;
};

struct RobotState {
  Cell pos;
  Heading heading = Heading::kNorth;
  bool alive = true;
};

class GridWorld {
 public:
  // Seeded world: rectangular obstacles resampled until the obstructed
  // fraction is in range, robots on distinct free cells, zero latency.
  // Throws std::runtime_error when placement keeps failing.
  static GridWorld Create(const RpmConfig& cfg);
  // Explicit world for tests and tools. `obstacles` is row-major.
  static GridWorld FromMask(const RpmConfig& cfg, std::vector<uint8_t> obstacles,
                            std::vector<RobotState> robots);

  int width() const { return cfg_.width; }
  int height() const { return cfg_.height; }
  const RpmConfig& config() const { return cfg_; }
  int round() const { return round_; }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < cfg_.width && c.y < cfg_.height;
  }
  int Index(Cell c) const { return c.y * cfg_.width + c.x; }
  Cell CellAt(int index) const { return {index % cfg_.width, index / cfg_.width}; }
  bool IsObstacle(Cell c) const { return obstacles_[Index(c)] != 0; }
  bool IsFree(Cell c) const { return InBounds(c) && !IsObstacle(c); }

  int latency(Cell c) const { return latency_[Index(c)]; }
  const std::vector<int>& latencies() const { return latency_; }
  void set_latency(Cell c, int value) { latency_[Index(c)] = value; }

  const std::vector<RobotState>& robots() const { return robots_; }
  int alive_robots() const;

  double obstructed_fraction() const;
  double mean_latency() const;

  // Free cells within vis_range of `pos` (center distance) whose supercover
  // line from `pos` crosses no obstacle, endpoints excluded. Sorted linear
  // indices.
  std::vector<int> VisibleCells(Cell pos) const;

  // Straight path of up to traj_len steps from `start`, stopping before an
  // obstacle or the border. Always contains `start`.
  std::vector<Cell> Path(Cell start, Heading dir) const;

 private:
  friend struct RpmStepper;

  RpmConfig cfg_;
  std::vector<uint8_t> obstacles_;
  std::vector<int> latency_;
  std::vector<RobotState> robots_;
  int round_ = 0;
};

// Cells touched by the segment between the two cell centers, endpoints
// included. Where the segment passes exactly through a cell corner both
// side cells are included.
std::vector<Cell> SupercoverLine(Cell from, Cell to);

struct RoundScenario {
  Scenario scenario;
  // World cell index of every scenario target.
  std::vector<int> target_cells;
  // World robot index of every scenario robot (alive robots only).
  std::vector<int> robot_index;
  // Path and heading of every trajectory, indexed by trajectory id.
  std::vector<std::vector<Cell>> paths;
  std::vector<Heading> headings;
};

// Four candidate paths per alive robot in N, E, S, W order; coverage is the
// union of what is visible from every path cell.
RoundScenario BuildRoundScenario(const GridWorld& w, int alpha);

enum class FailModel { kNone, kA2, kOptimal };
std::string_view FailModelName(FailModel model);
FailModel ParseFailModel(std::string_view name);

struct RoundReport {
  int round = 0;
  std::string solver;
  int alpha = 0;
  int fail_size = 0;
  double planned = 0.0;
  double realized = 0.0;
  int survivors = 0;
  double mean_latency = 0.0;
  // Solver effort; not part of the CSV.
  int64_t f_evals = 0;
};

// Plans one round with `solver`, fails `fail_size` robots under `fail_model`,
// executes the survivors' paths, and updates the latency field.
RoundReport Step(GridWorld& w, const SolverSpec& solver, int alpha,
                 FailModel fail_model, int fail_size);

std::string RoundCsvHeader();
std::string RoundCsvRow(const RoundReport& report);

// Binary PGM (P5): obstacles 255, latency scaled to 0..254.
std::string LatencyPgm(const GridWorld& w);

}  // namespace rcm

#endif  // RCM_RPM_H_
