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
// Synthetic geometric scenarios.
//
// Robots and targets are dropped uniformly in a square region. Every robot
// gets a fan of candidate arcs around its heading: half ellipses whose major
// axis is rotated by equally spaced offsets in [-fan, +fan], each scaled to
// the same arc length. A trajectory covers a target when the target lies
// within the sensing distance of the arc, measured against the sampled
// polyline clipped to the region.
//

#ifndef RCM_SCENARIO_GEN_H_
#define RCM_SCENARIO_GEN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rcm/scenario.h"

namespace rcm {

struct GeoConfig {
  double region_side = 100.0;
  int n_robots = 15;
  int n_targets = 150;
  int n_traj_per_robot = 7;
  double traj_len = 40.0;
  double sense_dist = 10.0;
  int alpha = 0;
  uint64_t seed = 1;
  // Fan geometry.
  double fan_half_angle_deg = 60.0;
  double minor_axis_ratio = 0.5;
  int arc_samples = 64;

  // Throws std::invalid_argument on a non-positive dimension or count.
  void Validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// One candidate arc. Points on it are
//   start + a (1 - cos phi) u + b sin phi v,  phi in [0, pi],
// where u points along `direction` and v is u rotated by +90 degrees. A
// negative b bends the arc clockwise; b = 0 is a straight segment.
struct ArcShape {
  Point start;
  double direction = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  std::vector<Point> samples;
};

struct RobotGeometry {
  Point pos;
  double heading = 0.0;
  std::vector<ArcShape> arcs;
};

struct Geometry {
  double region_side = 0.0;
  std::vector<RobotGeometry> robots;
  std::vector<Point> targets;
};

struct GeneratedScenario {
  Scenario scenario;
  Geometry geometry;
};

// Point on an arc at parameter phi in [0, pi].
Point ArcPoint(const ArcShape& arc, double phi);

// Arc length of the half ellipse with semi-axes (1, ratio), numerically.
double UnitHalfEllipseLength(double ratio);

// Distance from `q` to the polyline `points` restricted to the square
// [0, side]^2. Infinity if the polyline never enters the square.
double ClippedPolylineDistance(const std::vector<Point>& points, double side,
                               Point q);

GeneratedScenario GenerateWithGeometry(const GeoConfig& cfg);
Scenario Generate(const GeoConfig& cfg);

// {"region_side", "robots":[{"pos":[x,y],"heading","arcs":[[[x,y],...]]}],
//  "targets":[[x,y],...]}
std::string SerializeGeometry(const Geometry& g);

}  // namespace rcm

#endif  // RCM_SCENARIO_GEN_H_
