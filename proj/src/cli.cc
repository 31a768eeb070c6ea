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


#include "rcm/cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "rcm/attack.h"
#include "rcm/coverage.h"
#include "rcm/exact.h"
#include "rcm/experiment.h"
#include "rcm/rpm.h"
#include "rcm/scenario.h"
#include "rcm/scenario_gen.h"
#include "rcm/solvers.h"

namespace rcm {

namespace {

// Failure inside one stage of a subcommand.
class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what) {}
};

template <typename F>
auto Stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Integral values keep one decimal so "6.0" reads as a real.
std::string Real(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return fmt::format("{:.1f}", v);
  }
  return fmt::format("{}", v);
}

std::string TrajectoryList(const std::vector<TrajectoryId>& ids) {
  std::string out = "{";
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += fmt::format("p{}", ids[i]);
  }
  return out + "}";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

Scenario LoadWithAlpha(const std::string& path, int alpha) {
  Scenario s = Stage("load scenario", [&] { return LoadScenarioFile(path); });
  if (alpha >= 0) s = Stage("load scenario", [&] { return s.WithAlpha(alpha); });
  return s;
}

FeasibleSolution LoadSolution(const Scenario& s, const std::string& text) {
  return Stage("load solution", [&] {
    const std::string body =
        !text.empty() && text[0] == '@' ? ReadFile(text.substr(1)) : text;
    FeasibleSolution sol = ParseSolution(body, s.num_robots());
    if (!ValidateSolution(s, sol)) {
      throw std::invalid_argument(
          "not a feasible solution (need one owned trajectory per robot)");
    }
    return sol;
  });
}

AttackResult RunAttack(const Scenario& s, const FeasibleSolution& sol,
                       const std::string& model, int k, uint64_t budget) {
  return Stage("attack", [&] {
    return ResidualCoverage(s, sol, ParseAttackModel(model),
                            k >= 0 ? k : s.alpha(), budget);
  });
}

struct Options {
  // generate
  GeoConfig geo;
  std::string geometry_out;
  // shared
  std::string scenario;
  std::string out;
  std::string solver = "obg";
  std::string solution;
  std::string model = "optimal";
  int alpha = -1;
  int k = -1;
  uint64_t seed = 0;
  uint64_t budget = 0;
  // bench
  std::string config;
  std::string aggregates;
  int threads = 0;
  int repetitions = 0;
  // rpm
  RpmConfig rpm;
  int rounds = 20;
  std::string fail_model = "a2";
  int fail_size = -1;
  std::string pgm_dir;
  int pgm_every = 0;
};

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    Stage("write output", [&] { WriteFile(path, text); });
  }
}

int RunGenerate(Options& o, std::ostream& out) {
  o.geo.alpha = std::max(o.alpha, 0);
  const GeneratedScenario g =
      Stage("generate", [&] { return GenerateWithGeometry(o.geo); });
  Emit(o.out, SerializeScenario(g.scenario), out);
  if (!o.geometry_out.empty()) {
    Stage("write geometry",
          [&] { WriteFile(o.geometry_out, SerializeGeometry(g.geometry)); });
  }
  return 0;
}

int RunSolve(Options& o, std::ostream& out) {
  const Scenario s = LoadWithAlpha(o.scenario, o.alpha);
  const SolverSpec spec =
      Stage("parse solver", [&] { return ParseSolverSpec(o.solver, o.seed); });
  const SolveReport r = Stage("solve", [&] { return Solve(s, spec); });
  if (!o.out.empty()) {
    Stage("write output", [&] { WriteFile(o.out, SerializeSolution(r.solution) + "\n"); });
  }
  out << "solution " << SerializeSolution(r.solution) << "\n";
  out << "trajectories " << TrajectoryList(SortedTrajectories(r.solution))
      << "\n";
  out << "coverage " << Real(CoverageValue(s, r.solution.chosen)) << "\n";
  out << "f_evals " << r.f_evals << "\n";
  if (spec.kind == SolverKind::kLs) {
    out << "ls_iterations " << r.ls_iterations << "\n";
  }
  out << fmt::format("wall_time_ms {:.3f}\n",
                     std::chrono::duration<double, std::milli>(r.wall_time)
                         .count());
  return 0;
}

int RunAttackCmd(Options& o, std::ostream& out) {
  const Scenario s = LoadWithAlpha(o.scenario, o.alpha);
  const FeasibleSolution sol = LoadSolution(s, o.solution);
  const AttackResult a = RunAttack(s, sol, o.model, o.k, o.budget);
  out << "removed " << TrajectoryList(a.removed) << "\n";
  out << "residual " << Real(a.residual) << "\n";
  out << "evals " << a.evals << "\n";
  return 0;
}

int RunEvaluate(Options& o, std::ostream& out) {
  const Scenario s = LoadWithAlpha(o.scenario, o.alpha);
  const FeasibleSolution sol = LoadSolution(s, o.solution);
  out << Real(RunAttack(s, sol, o.model, o.k, o.budget).residual) << "\n";
  return 0;
}

int RunExportIlp(Options& o, std::ostream& out) {
  const Scenario s = LoadWithAlpha(o.scenario, o.alpha);
  const uint64_t budget = o.budget ? o.budget : kDefaultIlpAttackBudget;
  const std::string lp = Stage("export ilp", [&] { return ExportIlp(s, budget); });
  Emit(o.out, lp, out);
  return 0;
}

int RunBruteforce(Options& o, std::ostream& out) {
  const Scenario s = LoadWithAlpha(o.scenario, o.alpha);
  const uint64_t budget = o.budget ? o.budget : kDefaultBruteforceBudget;
  const ExactResult r =
      Stage("bruteforce", [&] { return SolveBruteforce(s, budget); });
  if (!o.out.empty()) {
    Stage("write output", [&] { WriteFile(o.out, SerializeSolution(r.solution) + "\n"); });
  }
  out << "solution " << SerializeSolution(r.solution) << "\n";
  out << "trajectories " << TrajectoryList(SortedTrajectories(r.solution))
      << "\n";
  out << "residual " << Real(r.residual) << "\n";
  out << "enumerated " << r.enumerated << "\n";
  return 0;
}

int RunBench(Options& o, std::ostream& out) {
  ExperimentConfig cfg = Stage("load config", [&] {
    return ParseExperimentConfig(ReadFile(o.config));
  });
  if (o.threads > 0) cfg.threads = o.threads;
  if (o.repetitions > 0) cfg.repetitions = o.repetitions;
  const ExperimentReport report =
      Stage("run experiment", [&] { return RunExperiment(cfg); });
  const std::string rows = RowsCsv(report.rows);
  const std::string aggs = AggregatesCsv(report.aggregates);
  if (o.out.empty() && o.aggregates.empty()) {
    out << rows << "\n" << aggs;
    return 0;
  }
  Emit(o.out, rows, out);
  if (!o.aggregates.empty()) Emit(o.aggregates, aggs, out);
  return 0;
}

int RunRpm(Options& o, std::ostream& out) {
  const SolverSpec spec =
      Stage("parse solver", [&] { return ParseSolverSpec(o.solver, o.seed); });
  const FailModel fail =
      Stage("parse failure model", [&] { return ParseFailModel(o.fail_model); });
  const int alpha = std::max(o.alpha, 0);
  GridWorld world = Stage("build world", [&] { return GridWorld::Create(o.rpm); });
  if (!o.pgm_dir.empty()) {
    Stage("write snapshot",
          [&] { std::filesystem::create_directories(o.pgm_dir); });
  }
  std::string csv = RoundCsvHeader();
  for (int round = 0; round < o.rounds; ++round) {
    const int requested = o.fail_size >= 0 ? o.fail_size : alpha;
    const int fail_size =
        fail == FailModel::kNone ? 0 : std::min(requested, world.alive_robots());
    const RoundReport r = Stage(fmt::format("round {}", round), [&] {
      return Step(world, spec, alpha, fail, fail_size);
    });
    csv += RoundCsvRow(r);
    if (!o.pgm_dir.empty() && o.pgm_every > 0 &&
        (round + 1) % o.pgm_every == 0) {
      const std::string path =
          (std::filesystem::path(o.pgm_dir) / fmt::format("round_{:05d}.pgm", round + 1))
              .string();
      Stage("write snapshot", [&] { WriteFile(path, LatencyPgm(world)); });
    }
  }
  Emit(o.out, csv, out);
  return 0;
}

void AddScenarioFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmd->add_option("--alpha", o.alpha, "Override the scenario's attack size")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Resilient coverage maximization toolkit"};
  app.require_subcommand(1);
  Options o;
  std::function<int(Options&, std::ostream&)> run;

  auto* gen = app.add_subcommand("generate", "Random geometric scenario");
  gen->add_option("--robots", o.geo.n_robots);
  gen->add_option("--targets", o.geo.n_targets);
  gen->add_option("--traj-per-robot", o.geo.n_traj_per_robot);
  gen->add_option("--traj-len", o.geo.traj_len, "Trajectory length (m)");
  gen->add_option("--sense-dist", o.geo.sense_dist, "Sensing distance (m)");
  gen->add_option("--region-side", o.geo.region_side);
  gen->add_option("--alpha", o.alpha)->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", o.geo.seed);
  gen->add_option("--out", o.out, "Scenario output (default stdout)");
  gen->add_option("--geometry", o.geometry_out, "Also write arc geometry JSON");
  gen->callback([&] { run = RunGenerate; });

  auto* solve = app.add_subcommand("solve", "Run a heuristic solver");
  AddScenarioFlags(solve, o);
  solve->add_option("--solver", o.solver, "Solver name")->required();
  solve->add_option("--seed", o.seed, "Seed for org-r");
  solve->add_option("--out", o.out, "Write the solution JSON here");
  solve->callback([&] { run = RunSolve; });

  auto* attack = app.add_subcommand("attack", "Attack a solution");
  AddScenarioFlags(attack, o);
  attack->add_option("--solution", o.solution, "Solution JSON or @file")
      ->required();
  attack->add_option("--model", o.model, "optimal, a1 or a2");
  attack->add_option("-k,--size", o.k, "Attack size (default alpha)")
      ->check(CLI::NonNegativeNumber);
  attack->add_option("--budget", o.budget, "Optimal-attack subset budget")
      ->default_val(kDefaultAttackBudget);
  attack->callback([&] { run = RunAttackCmd; });

  auto* eval = app.add_subcommand("evaluate", "Residual coverage of a solution");
  AddScenarioFlags(eval, o);
  eval->add_option("--solution", o.solution, "Solution JSON or @file")
      ->required();
  eval->add_option("--model", o.model, "optimal, a1 or a2");
  eval->add_option("-k,--size", o.k, "Attack size (default alpha)")
      ->check(CLI::NonNegativeNumber);
  eval->add_option("--budget", o.budget, "Optimal-attack subset budget")
      ->default_val(kDefaultAttackBudget);
  eval->callback([&] { run = RunEvaluate; });

  auto* ilp = app.add_subcommand("export-ilp", "CPLEX LP formulation");
  AddScenarioFlags(ilp, o);
  ilp->add_option("--out", o.out, "LP output (default stdout)");
  ilp->add_option("--budget", o.budget, "Maximum number of attacks");
  ilp->callback([&] { run = RunExportIlp; });

  auto* bf = app.add_subcommand("bruteforce", "Exhaustive optimum");
  AddScenarioFlags(bf, o);
  bf->add_option("--budget", o.budget, "Maximum attack evaluations");
  bf->add_option("--out", o.out, "Write the solution JSON here");
  bf->callback([&] { run = RunBruteforce; });

  auto* bench = app.add_subcommand("bench", "Run an experiment config");
  bench->add_option("--config", o.config, "Experiment JSON file")->required();
  bench->add_option("--out", o.out, "Row CSV (default stdout)");
  bench->add_option("--aggregates", o.aggregates, "Aggregate CSV");
  bench->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  bench->add_option("--repetitions", o.repetitions)->check(CLI::PositiveNumber);
  bench->callback([&] { run = RunBench; });

  auto* rpm = app.add_subcommand("rpm", "Persistent-monitoring simulation");
  rpm->add_option("--rounds", o.rounds)->check(CLI::NonNegativeNumber);
  rpm->add_option("--solver", o.solver);
  rpm->add_option("--seed", o.rpm.seed);
  rpm->add_option("--alpha", o.alpha)->check(CLI::NonNegativeNumber);
  rpm->add_option("--fail-model", o.fail_model, "none, a2 or optimal");
  rpm->add_option("--fail-size", o.fail_size, "Failures per round (default alpha)")
      ->check(CLI::NonNegativeNumber);
  rpm->add_option("--width", o.rpm.width);
  rpm->add_option("--height", o.rpm.height);
  rpm->add_option("--obstacles", o.rpm.n_obstacles);
  rpm->add_option("--robots", o.rpm.n_robots);
  rpm->add_option("--vis-range", o.rpm.vis_range);
  rpm->add_option("--l-max", o.rpm.l_max);
  rpm->add_option("--traj-len", o.rpm.traj_len);
  rpm->add_flag("--permanent-failures", o.rpm.permanent_failures);
  rpm->add_option("--out", o.out, "Round CSV (default stdout)");
  rpm->add_option("--pgm-dir", o.pgm_dir, "Directory for latency snapshots");
  rpm->add_option("--pgm-every", o.pgm_every, "Snapshot period in rounds")
      ->check(CLI::NonNegativeNumber);
  rpm->callback([&] { run = RunRpm; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    return run(o, out);
  } catch (const std::exception& e) {
    err << "rcm " << app.get_subcommands().front()->get_name()
        << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rcm
