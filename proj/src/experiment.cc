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

#include "rcm/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"
#include "rcm/coverage.h"
#include "rcm/solvers.h"

namespace rcm {

namespace {

using nlohmann::json;

constexpr const char* kReferenceSolver = "2pg";

double Millis(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double, std::milli>(ns).count();
}

struct Solved {
  std::string name;
  SolveReport report;
};

std::vector<Solved> SolveAll(const Scenario& s,
                             const std::vector<std::string>& names,
                             uint64_t seed) {
  std::vector<Solved> out;
  for (const std::string& name : names) {
    out.push_back({name, Solve(s, ParseSolverSpec(name, seed))});
  }
  return out;
}

ExperimentRow MakeRow(const ExperimentConfig& cfg, uint64_t seed,
                      const Solved& solved, int alpha, int fail_size,
                      int n_robots, double residual,
                      std::optional<double> reference) {
  ExperimentRow row;
  row.seed = seed;
  row.solver = solved.name;
  row.alpha = alpha;
  row.fail_size = fail_size;
  row.n_robots = n_robots;
  row.residual = residual;
  row.reference_residual = reference;
  row.f_evals = solved.report.f_evals;
  if (cfg.timing) row.wall_time_ms = Millis(solved.report.wall_time);
  return row;
}

// Residual of the 2pg solution; solved separately when it is not listed.
double ReferenceResidual(const Scenario& s, const std::vector<Solved>& solved,
                         AttackModel model, int k, uint64_t budget) {
  for (const Solved& x : solved) {
    if (x.name == kReferenceSolver) {
      return ResidualCoverage(s, x.report.solution, model, k, budget).residual;
    }
  }
  const SolveReport tpg = SolveTpg(s);
  return ResidualCoverage(s, tpg.solution, model, k, budget).residual;
}

std::vector<ExperimentRow> RunAccuracyVsBf(const ExperimentConfig& cfg,
                                           uint64_t seed) {
  GeoConfig geo = cfg.geo;
  geo.seed = seed;
  const Scenario base = Generate(geo);
  std::vector<ExperimentRow> rows;
  for (int alpha : cfg.alphas) {
    const Scenario s = base.WithAlpha(alpha);
    const auto start = std::chrono::steady_clock::now();
    const ExactResult exact = SolveBruteforce(s, cfg.bruteforce_budget);
    Solved bf{"bf", {}};
    bf.report.solution = exact.solution;
    bf.report.f_evals = exact.enumerated;
    bf.report.wall_time = std::chrono::steady_clock::now() - start;
    rows.push_back(MakeRow(cfg, seed, bf, alpha, alpha, geo.n_robots,
                           exact.residual, exact.residual));
    for (const Solved& x : SolveAll(s, cfg.solvers, seed)) {
      const double residual =
          ResidualCoverage(s, x.report.solution, AttackModel::kOptimal, alpha,
                           cfg.attack_budget)
              .residual;
      rows.push_back(MakeRow(cfg, seed, x, alpha, alpha, geo.n_robots,
                             residual, exact.residual));
    }
  }
  return rows;
}

std::vector<ExperimentRow> RunRelative(const ExperimentConfig& cfg,
                                       uint64_t seed) {
  GeoConfig geo = cfg.geo;
  geo.seed = seed;
  const Scenario base = Generate(geo);
  std::vector<ExperimentRow> rows;
  for (int alpha : cfg.alphas) {
    const Scenario s = base.WithAlpha(alpha);
    const std::vector<Solved> solved = SolveAll(s, cfg.solvers, seed);
    const double reference = ReferenceResidual(s, solved, cfg.eval_model, alpha,
                                               cfg.attack_budget);
    for (const Solved& x : solved) {
      const double residual = ResidualCoverage(s, x.report.solution,
                                               cfg.eval_model, alpha,
                                               cfg.attack_budget)
                                  .residual;
      rows.push_back(MakeRow(cfg, seed, x, alpha, alpha, geo.n_robots,
                             residual, reference));
    }
  }
  return rows;
}

std::vector<ExperimentRow> RunRuntime(const ExperimentConfig& cfg,
                                      uint64_t seed) {
  std::vector<ExperimentRow> rows;
  for (int n_robots : cfg.robot_counts) {
    GeoConfig geo = cfg.geo;
    geo.seed = seed;
    geo.n_robots = n_robots;
    const Scenario base = Generate(geo);
    for (int alpha : cfg.alphas) {
      const Scenario s = base.WithAlpha(std::min(alpha, n_robots));
      for (const Solved& x : SolveAll(s, cfg.solvers, seed)) {
        const double residual =
            ResidualCoverage(s, x.report.solution, cfg.eval_model, s.alpha(),
                             cfg.attack_budget)
                .residual;
        rows.push_back(MakeRow(cfg, seed, x, s.alpha(), s.alpha(), n_robots,
                               residual, std::nullopt));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> RunSensitivity(const ExperimentConfig& cfg,
                                          uint64_t seed) {
  GeoConfig geo = cfg.geo;
  geo.seed = seed;
  const Scenario base = Generate(geo);
  std::vector<ExperimentRow> rows;
  for (int alpha : cfg.alphas) {
    const Scenario s = base.WithAlpha(alpha);
    const std::vector<Solved> solved = SolveAll(s, cfg.solvers, seed);
    for (int fail : cfg.fail_sizes) {
      const double reference =
          ReferenceResidual(s, solved, cfg.eval_model, fail, cfg.attack_budget);
      for (const Solved& x : solved) {
        const double residual = ResidualCoverage(s, x.report.solution,
                                                 cfg.eval_model, fail,
                                                 cfg.attack_budget)
                                    .residual;
        rows.push_back(MakeRow(cfg, seed, x, alpha, fail, geo.n_robots,
                               residual, reference));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> RunRpm(const ExperimentConfig& cfg, uint64_t seed) {
  RpmConfig rpm = cfg.rpm;
  rpm.seed = seed;
  const GridWorld initial = GridWorld::Create(rpm);
  std::vector<ExperimentRow> rows;
  for (int alpha : cfg.alphas) {
    std::vector<ExperimentRow> block;
    std::optional<double> reference;
    std::vector<std::string> names = cfg.solvers;
    const bool listed = std::find(names.begin(), names.end(),
                                  kReferenceSolver) != names.end();
    if (!listed) names.push_back(kReferenceSolver);
    for (const std::string& name : names) {
      const SolverSpec spec = ParseSolverSpec(name, seed);
      GridWorld world = initial;
      double realized = 0.0;
      Solved run{name, {}};
      const auto start = std::chrono::steady_clock::now();
      for (int round = 0; round < cfg.rpm_rounds; ++round) {
        const int fail = cfg.rpm_fail_model == FailModel::kNone
                             ? 0
                             : std::min(alpha, world.alive_robots());
        const RoundReport r = Step(world, spec, alpha, cfg.rpm_fail_model, fail);
        realized += r.realized;
        run.report.f_evals += r.f_evals;
      }
      run.report.wall_time = std::chrono::steady_clock::now() - start;
      const double mean = cfg.rpm_rounds > 0 ? realized / cfg.rpm_rounds : 0.0;
      if (name == kReferenceSolver) reference = mean;
      if (listed || name != kReferenceSolver) {
        block.push_back(
            MakeRow(cfg, seed, run, alpha, alpha, rpm.n_robots, mean, {}));
      }
    }
    for (ExperimentRow& row : block) row.reference_residual = reference;
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

std::vector<ExperimentRow> RunRepetition(const ExperimentConfig& cfg,
                                         uint64_t seed) {
  switch (cfg.kind) {
    case ExperimentKind::kAccuracyVsBf:
      return RunAccuracyVsBf(cfg, seed);
    case ExperimentKind::kRelativeVs2pg:
    case ExperimentKind::kLargeA2:
      return RunRelative(cfg, seed);
    case ExperimentKind::kRuntime:
      return RunRuntime(cfg, seed);
    case ExperimentKind::kSensitivity:
      return RunSensitivity(cfg, seed);
    case ExperimentKind::kRpm:
      return RunRpm(cfg, seed);
  }
  return {};
}

std::string Num(double v) { return fmt::format("{}", v); }

std::string Opt(const std::optional<double>& v) {
  return v ? Num(*v) : std::string("NA");
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("experiment config: field \"") + key +
                     "\" has the wrong type");
  }
}

}  // namespace

std::string_view ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAccuracyVsBf:
      return "accuracy_vs_bf";
    case ExperimentKind::kRelativeVs2pg:
      return "relative_vs_2pg";
    case ExperimentKind::kLargeA2:
      return "large_a2";
    case ExperimentKind::kRuntime:
      return "runtime";
    case ExperimentKind::kSensitivity:
      return "sensitivity";
    case ExperimentKind::kRpm:
      return "rpm";
  }
  return "?";
}

ExperimentKind ParseExperimentKind(std::string_view name) {
  for (ExperimentKind kind :
       {ExperimentKind::kAccuracyVsBf, ExperimentKind::kRelativeVs2pg,
        ExperimentKind::kLargeA2, ExperimentKind::kRuntime,
        ExperimentKind::kSensitivity, ExperimentKind::kRpm}) {
    if (ExperimentKindName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown experiment kind \"" + std::string(name) +
                              "\"");
}

void ExperimentConfig::Validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (solvers.empty()) throw std::invalid_argument("no solvers requested");
  for (const std::string& name : solvers) ParseSolverSpec(name);
  if (alphas.empty()) throw std::invalid_argument("no attack sizes requested");
  if (kind == ExperimentKind::kSensitivity && fail_sizes.empty()) {
    throw std::invalid_argument("sensitivity needs fail_sizes");
  }
  if (kind == ExperimentKind::kRuntime && robot_counts.empty()) {
    throw std::invalid_argument("runtime needs robot_counts");
  }
  if (kind == ExperimentKind::kRpm) {
    if (rpm_rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  } else {
    GeoConfig probe = geo;
    probe.alpha = 0;
    probe.Validate();
  }
}

ExperimentConfig DefaultExperimentConfig(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.solvers = {"obg", "org-u-i", "ls-a2-i2", "2pg"};
  switch (kind) {
    case ExperimentKind::kAccuracyVsBf:
      cfg.geo.n_robots = 6;
      cfg.geo.n_targets = 60;
      cfg.geo.traj_len = 50.0;
      cfg.geo.sense_dist = 15.0;
      cfg.alphas = {2, 3, 4};
      break;
    case ExperimentKind::kRelativeVs2pg:
      cfg.solvers = SolverNames();
      cfg.alphas = {3, 6, 9};
      break;
    case ExperimentKind::kLargeA2:
      cfg.geo.n_robots = 64;
      cfg.geo.n_targets = 1000;
      cfg.geo.traj_len = 25.0;
      cfg.geo.sense_dist = 5.0;
      cfg.eval_model = AttackModel::kA2;
      cfg.alphas = {2, 4, 8, 16, 32};
      break;
    case ExperimentKind::kRuntime:
      cfg.geo.n_targets = 1000;
      cfg.geo.traj_len = 25.0;
      cfg.geo.sense_dist = 5.0;
      cfg.eval_model = AttackModel::kA2;
      cfg.alphas = {10};
      cfg.robot_counts = {100, 200, 500, 1000, 2000, 5000};
      cfg.timing = true;
      break;
    case ExperimentKind::kSensitivity:
      cfg.alphas = {6};
      cfg.fail_sizes = {0, 2, 4, 6, 8, 10, 12, 14};
      break;
    case ExperimentKind::kRpm:
      cfg.eval_model = AttackModel::kA2;
      cfg.alphas = {2, 4, 8, 16};
      break;
  }
  return cfg;
}

ExperimentConfig ParseExperimentConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw ParseError("experiment config: expected an object with a \"kind\"");
  }
  ExperimentConfig cfg;
  try {
    cfg = DefaultExperimentConfig(
        ParseExperimentKind(doc["kind"].get<std::string>()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  Read(doc, "solvers", cfg.solvers);
  Read(doc, "alphas", cfg.alphas);
  Read(doc, "fail_sizes", cfg.fail_sizes);
  Read(doc, "robot_counts", cfg.robot_counts);
  Read(doc, "repetitions", cfg.repetitions);
  Read(doc, "base_seed", cfg.base_seed);
  Read(doc, "timing", cfg.timing);
  Read(doc, "threads", cfg.threads);
  Read(doc, "attack_budget", cfg.attack_budget);
  Read(doc, "bruteforce_budget", cfg.bruteforce_budget);
  Read(doc, "rounds", cfg.rpm_rounds);
  std::string model;
  Read(doc, "eval_model", model);
  std::string fail_model;
  Read(doc, "fail_model", fail_model);
  try {
    if (!model.empty()) cfg.eval_model = ParseAttackModel(model);
    if (!fail_model.empty()) cfg.rpm_fail_model = ParseFailModel(fail_model);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (auto it = doc.find("geo"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("experiment config: geo must be an object");
    Read(*it, "region_side", cfg.geo.region_side);
    Read(*it, "robots", cfg.geo.n_robots);
    Read(*it, "targets", cfg.geo.n_targets);
    Read(*it, "traj_per_robot", cfg.geo.n_traj_per_robot);
    Read(*it, "traj_len", cfg.geo.traj_len);
    Read(*it, "sense_dist", cfg.geo.sense_dist);
    Read(*it, "fan_half_angle_deg", cfg.geo.fan_half_angle_deg);
    Read(*it, "minor_axis_ratio", cfg.geo.minor_axis_ratio);
    Read(*it, "arc_samples", cfg.geo.arc_samples);
  }
  if (auto it = doc.find("rpm"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("experiment config: rpm must be an object");
    Read(*it, "width", cfg.rpm.width);
    Read(*it, "height", cfg.rpm.height);
    Read(*it, "obstacles", cfg.rpm.n_obstacles);
    Read(*it, "robots", cfg.rpm.n_robots);
    Read(*it, "vis_range", cfg.rpm.vis_range);
    Read(*it, "l_max", cfg.rpm.l_max);
    Read(*it, "traj_len", cfg.rpm.traj_len);
    Read(*it, "permanent_failures", cfg.rpm.permanent_failures);
  }
  return cfg;
}

std::optional<double> ExperimentRow::relative_accuracy_percent() const {
  if (!reference_residual || !(*reference_residual > 0.0)) return std::nullopt;
  return 100.0 * residual / *reference_residual;
}

ExperimentReport RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const int reps = cfg.repetitions;
  std::vector<std::vector<ExperimentRow>> per_rep(reps);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (true) {
      const int rep = next.fetch_add(1);
      if (rep >= reps) return;
      try {
        per_rep[rep] = RunRepetition(cfg, cfg.base_seed + rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };
  const int threads = std::min(cfg.threads, reps);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  for (auto& rows : per_rep) {
    report.rows.insert(report.rows.end(), std::make_move_iterator(rows.begin()),
                       std::make_move_iterator(rows.end()));
  }
  report.aggregates = Aggregate(report.rows);
  return report;
}

std::vector<AggregateRow> Aggregate(const std::vector<ExperimentRow>& rows) {
  using Key = std::tuple<std::string, int, int, int>;
  std::map<Key, size_t> slot;
  std::vector<std::vector<const ExperimentRow*>> groups;
  for (const ExperimentRow& row : rows) {
    const Key key{row.solver, row.alpha, row.fail_size, row.n_robots};
    auto [it, inserted] = slot.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&row);
  }

  auto mean_std = [](const std::vector<double>& v) {
    if (v.empty()) return std::pair<double, double>{0.0, 0.0};
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    if (v.size() < 2) return std::pair<double, double>{mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair<double, double>{
        mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
  };

  std::vector<AggregateRow> out;
  for (const auto& group : groups) {
    AggregateRow agg;
    agg.solver = group[0]->solver;
    agg.alpha = group[0]->alpha;
    agg.fail_size = group[0]->fail_size;
    agg.n_robots = group[0]->n_robots;
    agg.count = static_cast<int>(group.size());
    std::vector<double> residuals, accuracies, evals, walls;
    for (const ExperimentRow* row : group) {
      residuals.push_back(row->residual);
      if (auto acc = row->relative_accuracy_percent()) accuracies.push_back(*acc);
      evals.push_back(static_cast<double>(row->f_evals));
      if (row->wall_time_ms) walls.push_back(*row->wall_time_ms);
    }
    std::tie(agg.mean_residual, agg.std_residual) = mean_std(residuals);
    agg.accuracy_count = static_cast<int>(accuracies.size());
    std::tie(agg.mean_accuracy, agg.std_accuracy) = mean_std(accuracies);
    agg.mean_f_evals = mean_std(evals).first;
    if (walls.size() == group.size()) agg.mean_wall_time_ms = mean_std(walls).first;
    out.push_back(std::move(agg));
  }
  return out;
}

std::string RowsCsv(const std::vector<ExperimentRow>& rows) {
  std::string out =
      "seed,solver,alpha,fail_size,residual,reference_residual,"
      "relative_accuracy_percent,f_evals,wall_time_ms,n_robots\n";
  for (const ExperimentRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.seed, r.solver,
                       r.alpha, r.fail_size, Num(r.residual),
                       Opt(r.reference_residual),
                       Opt(r.relative_accuracy_percent()), r.f_evals,
                       Opt(r.wall_time_ms), r.n_robots);
  }
  return out;
}

std::string AggregatesCsv(const std::vector<AggregateRow>& aggregates) {
  std::string out =
      "solver,alpha,fail_size,n_robots,count,mean_residual,std_residual,"
      "accuracy_count,mean_relative_accuracy_percent,"
      "std_relative_accuracy_percent,mean_f_evals,mean_wall_time_ms\n";
  for (const AggregateRow& a : aggregates) {
    const bool has_acc = a.accuracy_count > 0;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", a.solver,
                       a.alpha, a.fail_size, a.n_robots, a.count,
                       Num(a.mean_residual), Num(a.std_residual),
                       a.accuracy_count,
                       has_acc ? Num(a.mean_accuracy) : std::string("NA"),
                       has_acc ? Num(a.std_accuracy) : std::string("NA"),
                       Num(a.mean_f_evals), Opt(a.mean_wall_time_ms));
  }
  return out;
}

}  // namespace rcm
