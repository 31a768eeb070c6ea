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

#include "rcm/scenario_gen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "rcm/random.h"

namespace rcm {

namespace {

constexpr double kPi = std::numbers::pi;

double PointSegmentDistance(Point q, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  return std::hypot(q.x - (a.x + t * dx), q.y - (a.y + t * dy));
}

// Liang-Barsky clip of segment ab to [0, side]^2. False if nothing remains.
bool ClipSegment(Point& a, Point& b, double side) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x, side - a.x, a.y, side - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
  }
  const Point start = a;
  a = {start.x + t0 * dx, start.y + t0 * dy};
  b = {start.x + t1 * dx, start.y + t1 * dy};
  return true;
}

}  // namespace

void GeoConfig::Validate() const {
  if (!(region_side > 0.0)) throw std::invalid_argument("region_side must be > 0");
  if (n_robots <= 0) throw std::invalid_argument("n_robots must be > 0");
  if (n_targets <= 0) throw std::invalid_argument("n_targets must be > 0");
  if (n_traj_per_robot < 1) {
    throw std::invalid_argument("n_traj_per_robot must be >= 1");
  }
  if (!(traj_len > 0.0)) throw std::invalid_argument("traj_len must be > 0");
  if (!(sense_dist > 0.0)) throw std::invalid_argument("sense_dist must be > 0");
  if (alpha < 0 || alpha > n_robots) {
    throw std::invalid_argument("alpha must lie in 0..n_robots");
  }
  if (arc_samples < 2) throw std::invalid_argument("arc_samples must be >= 2");
  if (fan_half_angle_deg < 0.0 || minor_axis_ratio < 0.0) {
    throw std::invalid_argument("fan geometry must be non-negative");
  }
}

Point ArcPoint(const ArcShape& arc, double phi) {
  const double ux = std::cos(arc.direction);
  const double uy = std::sin(arc.direction);
  const double along = arc.semi_major * (1.0 - std::cos(phi));
  const double across = arc.semi_minor * std::sin(phi);
  return {arc.start.x + along * ux - across * uy,
          arc.start.y + along * uy + across * ux};
}

double UnitHalfEllipseLength(double ratio) {
  constexpr int kSteps = 4096;
  double length = 0.0;
  double px = 0.0;
  double py = 0.0;
  for (int i = 1; i <= kSteps; ++i) {
    const double phi = kPi * i / kSteps;
    const double x = 1.0 - std::cos(phi);
    const double y = ratio * std::sin(phi);
    length += std::hypot(x - px, y - py);
    px = x;
    py = y;
  }
  return length;
}

double ClippedPolylineDistance(const std::vector<Point>& points, double side,
                               Point q) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    Point a = points[i];
    Point b = points[i + 1];
    if (!ClipSegment(a, b, side)) continue;
    best = std::min(best, PointSegmentDistance(q, a, b));
  }
  return best;
}

GeneratedScenario GenerateWithGeometry(const GeoConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  Geometry geo;
  geo.region_side = cfg.region_side;

  const double fan = cfg.fan_half_angle_deg * kPi / 180.0;
  const double curved_length = UnitHalfEllipseLength(cfg.minor_axis_ratio);
  for (int r = 0; r < cfg.n_robots; ++r) {
    RobotGeometry robot;
    robot.pos.x = rng.Uniform(0.0, cfg.region_side);
    robot.pos.y = rng.Uniform(0.0, cfg.region_side);
    robot.heading = rng.Uniform(0.0, 2.0 * kPi);
    for (int j = 0; j < cfg.n_traj_per_robot; ++j) {
      // Offset in units of fan / (n - 1); exactly zero for the middle arc.
      const int steps = 2 * j - (cfg.n_traj_per_robot - 1);
      const double offset =
          steps == 0 ? 0.0 : fan * steps / (cfg.n_traj_per_robot - 1);
      ArcShape arc;
      arc.start = robot.pos;
      arc.direction = robot.heading + offset;
      // The middle arc of an odd fan is straight; the others bulge outward.
      if (offset == 0.0 || cfg.minor_axis_ratio == 0.0) {
        arc.semi_major = cfg.traj_len / 2.0;
        arc.semi_minor = 0.0;
      } else {
        arc.semi_major = cfg.traj_len / curved_length;
        arc.semi_minor = std::copysign(cfg.minor_axis_ratio * arc.semi_major,
                                       offset);
      }
      for (int i = 0; i < cfg.arc_samples; ++i) {
        arc.samples.push_back(ArcPoint(arc, kPi * i / (cfg.arc_samples - 1)));
      }
      robot.arcs.push_back(std::move(arc));
    }
    geo.robots.push_back(std::move(robot));
  }
  for (int t = 0; t < cfg.n_targets; ++t) {
    Point p;
    p.x = rng.Uniform(0.0, cfg.region_side);
    p.y = rng.Uniform(0.0, cfg.region_side);
    geo.targets.push_back(p);
  }

  std::vector<Target> targets;
  for (int t = 0; t < cfg.n_targets; ++t) targets.push_back({t, 1.0});
  std::vector<Robot> robots;
  std::vector<Trajectory> trajectories;
  for (int r = 0; r < cfg.n_robots; ++r) {
    Robot robot{r, {}};
    for (const ArcShape& arc : geo.robots[r].arcs) {
      Trajectory traj;
      traj.id = static_cast<TrajectoryId>(trajectories.size());
      traj.robot = r;
      double lo_x = arc.samples[0].x, hi_x = lo_x;
      double lo_y = arc.samples[0].y, hi_y = lo_y;
      for (const Point& p : arc.samples) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
      }
      for (int t = 0; t < cfg.n_targets; ++t) {
        const Point q = geo.targets[t];
        if (q.x < lo_x - cfg.sense_dist || q.x > hi_x + cfg.sense_dist ||
            q.y < lo_y - cfg.sense_dist || q.y > hi_y + cfg.sense_dist) {
          continue;
        }
        if (ClippedPolylineDistance(arc.samples, cfg.region_side, q) <=
            cfg.sense_dist) {
          traj.covers.push_back(t);
        }
      }
      robot.trajectories.push_back(traj.id);
      trajectories.push_back(std::move(traj));
    }
    robots.push_back(std::move(robot));
  }
  GeneratedScenario out;
  out.scenario = Scenario::Create(std::move(targets), std::move(robots),
                                  std::move(trajectories), cfg.alpha);
  out.geometry = std::move(geo);
  return out;
}

Scenario Generate(const GeoConfig& cfg) {
  return GenerateWithGeometry(cfg).scenario;
}

std::string SerializeGeometry(const Geometry& g) {
  using nlohmann::json;
  json doc;
  doc["region_side"] = g.region_side;
  json robots = json::array();
  for (const RobotGeometry& r : g.robots) {
    json arcs = json::array();
    for (const ArcShape& arc : r.arcs) {
      json pts = json::array();
      for (const Point& p : arc.samples) pts.push_back({p.x, p.y});
      arcs.push_back(std::move(pts));
    }
    robots.push_back({{"pos", {r.pos.x, r.pos.y}},
                      {"heading", r.heading},
                      {"arcs", std::move(arcs)}});
  }
  doc["robots"] = std::move(robots);
  json targets = json::array();
  for (const Point& p : g.targets) targets.push_back({p.x, p.y});
  doc["targets"] = std::move(targets);
  return doc.dump() + "\n";
}

}  // namespace rcm
