// Copyright 2026 The qsd developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsd/certificate.hpp"
#include "qsd/io.hpp"
#include "qsd/oracle.hpp"
#include "qsd/scenario.hpp"
#include "qsd/sdp.hpp"
#include "qsd/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNotConverged = 2;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("QSD_LOG");
  if (env == nullptr) return LogLevel::kInfo;
  const std::string value(env);
  if (value == "quiet") return LogLevel::kQuiet;
  if (value == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::kInfo) std::cerr << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::kDebug) std::cerr << message << "\n";
}

void emit(const nlohmann::ordered_json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw qsd::IoFailure("cannot open " + out_path + " for writing");
  }
  out << text;
}

// Reports every violated invariant at once so the file can be fixed in one go.
bool report_violations(const char* label, const qsd::ValidationReport& report) {
  for (const qsd::Violation& v : report.violations) {
    std::cerr << label << ": " << v.message << "\n";
  }
  return !report.valid();
}

qsd::Ensemble load_validated_problem(const std::string& path) {
  qsd::Ensemble ensemble = qsd::load_problem(path);
  if (report_violations("problem", qsd::validate_ensemble(ensemble))) {
    throw qsd::Error("problem file " + path + " is invalid");
  }
  return ensemble;
}

void log_monotonicity(const qsd::SolveReport& report) {
  int decreases = 0;
  double worst = 0.0;
  for (std::size_t i = 1; i < report.trace.size(); ++i) {
    const double drop = report.trace[i - 1] - report.trace[i];
    if (drop > 1e-12) {
      ++decreases;
      worst = std::max(worst, drop);
    }
  }
  if (decreases > 0) {
    log_debug("solver: success probability decreased on " +
              std::to_string(decreases) + " of " +
              std::to_string(report.trace.size()) +
              " iterations (worst drop " + std::to_string(worst) + ")");
  }
}

struct SolveFlags {
  int max_iterations = 10000;
  double gap_tolerance = 1e-8;
  double rank_cutoff = qsd::kDefaultRankCutoff;
  std::string init = "uniform";
  std::uint64_t seed = 0;
  double jitter_amplitude = 1e-3;

  qsd::SolverConfig config() const {
    qsd::SolverConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.gap_tolerance = gap_tolerance;
    cfg.rank_cutoff = rank_cutoff;
    cfg.init_mode = init == "jitter" ? qsd::InitMode::kRandomJitter
                                     : qsd::InitMode::kUniform;
    cfg.jitter_seed = seed;
    cfg.jitter_amplitude = jitter_amplitude;
    return cfg;
  }
};

void add_solver_flags(CLI::App* cmd, SolveFlags& flags,
                      bool with_seed = true) {
  cmd->add_option("--max-iter", flags.max_iterations, "Iteration budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gap-tol", flags.gap_tolerance,
                  "Certified duality-gap tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rank-cutoff", flags.rank_cutoff,
                  "Relative eigenvalue cutoff for pseudo-inverses")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--init", flags.init, "Initial strategy: uniform or jitter")
      ->check(CLI::IsMember({"uniform", "jitter"}));
  if (with_seed) {
    cmd->add_option("--seed", flags.seed, "Seed for the jitter initialization");
  }
  cmd->add_option("--jitter-amplitude", flags.jitter_amplitude,
                  "Perturbation size for --init jitter")
      ->check(CLI::PositiveNumber);
}

int cmd_solve(const std::string& problem_path, const SolveFlags& flags,
              const std::string& out_path) {
  const qsd::Ensemble ensemble = load_validated_problem(problem_path);
  const qsd::SolveReport report = qsd::solve(ensemble, flags.config());
  log_monotonicity(report);
  const qsd::Certificate cert = qsd::certify(ensemble, report.povm);
  nlohmann::ordered_json doc{{"report", qsd::report_to_json(report)},
                             {"certificate", qsd::certificate_to_json(cert)}};
  emit(doc, out_path);
  if (!report.converged) {
    log_info("solve: gap " + std::to_string(report.gap) +
             " did not reach tolerance");
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_certify(const std::string& path, const std::string& out_path) {
  const qsd::Ensemble ensemble = load_validated_problem(path);
  const qsd::Povm povm = qsd::load_povm(path, ensemble.dim());
  if (report_violations("povm", qsd::validate_povm(povm, ensemble.dim()))) {
    throw qsd::Error("povm in " + path + " is invalid");
  }
  const qsd::Certificate cert = qsd::certify(ensemble, povm);
  nlohmann::ordered_json doc{
      {"success_probability", qsd::success_probability(ensemble, povm)},
      {"certificate", qsd::certificate_to_json(cert)}};
  emit(doc, out_path);
  return kExitOk;
}

int cmd_export(const std::string& problem_path, const std::string& out_path) {
  const qsd::Ensemble ensemble = load_validated_problem(problem_path);
  const qsd::SdpProblem problem = qsd::build_dual_sdp(ensemble);
  qsd::export_sdpa(problem, out_path);
  const qsd::SdpaData data = qsd::sdpa_data(problem);
  nlohmann::ordered_json doc{{"path", out_path},
                             {"mdim", data.mdim},
                             {"nblock", data.nblock},
                             {"block_sizes", data.block_sizes},
                             {"nonzeros", data.entries.size()}};
  emit(doc, "");
  return kExitOk;
}

int cmd_simulate(const std::string& problem_path,
                 const std::string& povm_path, bool optimal, long long trials,
                 std::uint64_t seed, const SolveFlags& flags,
                 const std::string& out_path) {
  const qsd::Ensemble ensemble = load_validated_problem(problem_path);
  std::optional<qsd::Povm> povm;
  if (optimal) {
    const qsd::SolveReport report = qsd::solve(ensemble, flags.config());
    if (!report.converged) {
      log_info("simulate: solver did not converge");
      return kExitNotConverged;
    }
    povm = report.povm;
  } else {
    povm = qsd::load_povm(povm_path, ensemble.dim());
    if (report_violations("povm",
                          qsd::validate_povm(*povm, ensemble.dim()))) {
      throw qsd::Error("povm in " + povm_path + " is invalid");
    }
  }
  const qsd::GameStats stats = qsd::simulate_game(ensemble, *povm, trials, seed);
  const double analytic = qsd::success_probability(ensemble, *povm);
  const double sigma_distance =
      stats.std_error > 0.0
          ? std::abs(stats.empirical_rate - analytic) / stats.std_error
          : (stats.empirical_rate == analytic
                 ? 0.0
                 : std::numeric_limits<double>::infinity());
  nlohmann::ordered_json doc{{"stats", qsd::stats_to_json(stats)},
                             {"analytic_success_probability", analytic},
                             {"sigma_distance", sigma_distance},
                             {"seed", seed}};
  emit(doc, out_path);
  return kExitOk;
}

int cmd_scenario(double phi, int points, const std::string& csv_path, int jobs,
                 const SolveFlags& flags) {
  const qsd::SolverConfig cfg = flags.config();
  log_info("scenario: sweeping " + std::to_string(points) + " priors at phi=" +
           std::to_string(phi));
  const std::vector<qsd::SweepPoint> sweep =
      qsd::sweep_xi(phi, qsd::uniform_xi_grid(points), cfg, jobs);
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
      throw qsd::IoFailure("cannot open " + csv_path + " for writing");
    }
    qsd::write_sweep_csv(out, phi, sweep);
  }
  int failed = 0;
  for (const qsd::SweepPoint& p : sweep) {
    if (!p.converged) ++failed;
  }

  nlohmann::ordered_json doc{{"phi", phi},
                             {"points", points},
                             {"failed_points", failed},
                             {"csv", csv_path},
                             {"threshold_xi_23", qsd::threshold_xi_23(phi)}};
  try {
    doc["boundary_II_III"] =
        qsd::find_threshold_numeric(phi, qsd::RegionPair::kII_III, cfg);
  } catch (const qsd::BracketingFailure& err) {
    log_info(std::string("scenario: ") + err.what());
    doc["boundary_II_III"] = nullptr;
  }
  try {
    doc["boundary_I_II"] =
        qsd::find_threshold_numeric(phi, qsd::RegionPair::kI_II, cfg);
  } catch (const qsd::BracketingFailure& err) {
    log_info(std::string("scenario: ") + err.what());
    doc["boundary_I_II"] = nullptr;
  }
  emit(doc, "");
  if (failed * 100 > points) {
    log_info("scenario: " + std::to_string(failed) + " of " +
             std::to_string(points) + " points failed to certify");
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-error discrimination strategies for quantum sources: "
               "fixed-point solver, duality certificates, SDP export"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out_path;
  SolveFlags flags;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Compute a certified optimal strategy");
  solve_cmd->add_option("problem", problem_path, "Problem JSON file")
      ->required();
  solve_cmd->add_option("--out", out_path, "Write the JSON report here");
  add_solver_flags(solve_cmd, flags);

  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "Certify a user-supplied strategy against a problem");
  std::string certify_path;
  certify_cmd
      ->add_option("file", certify_path,
                   "Problem JSON file carrying an extra povm array")
      ->required();
  certify_cmd->add_option("--out", out_path, "Write the JSON report here");

  CLI::App* export_cmd = app.add_subcommand(
      "export-sdp", "Write the problem in sparse SDPA format");
  export_cmd->add_option("problem", problem_path, "Problem JSON file")
      ->required();
  std::string export_path;
  export_cmd->add_option("--out", export_path, "Output .dat-s path")
      ->required();

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo run of the discrimination game");
  simulate_cmd->add_option("problem", problem_path, "Problem JSON file")
      ->required();
  std::string povm_path;
  bool optimal = false;
  long long trials = 0;
  std::uint64_t sim_seed = 0;
  CLI::Option* povm_opt = simulate_cmd->add_option(
      "--povm", povm_path, "JSON file with a povm array to play");
  simulate_cmd
      ->add_flag("--optimal", optimal, "Solve for the optimal strategy first")
      ->excludes(povm_opt);
  simulate_cmd->add_option("--trials", trials, "Number of game rounds")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim_seed,
                           "Random seed (also drives --init jitter)");
  simulate_cmd->add_option("--out", out_path, "Write the JSON stats here");
  add_solver_flags(simulate_cmd, flags, /*with_seed=*/false);

  CLI::App* scenario_cmd = app.add_subcommand(
      "scenario", "Error-rate sweep for the three coplanar qubit states");
  double phi = std::numbers::pi / 16;
  int points = 201;
  int jobs = 0;
  std::string csv_path = "sweep.csv";
  scenario_cmd->add_option("--phi", phi, "Half-angle of the symmetric pair")
      ->required();
  scenario_cmd->add_option("--points", points, "Sweep resolution")
      ->check(CLI::Range(2, 1000000));
  scenario_cmd->add_option("--out", csv_path, "CSV output path");
  scenario_cmd->add_option("--jobs", jobs,
                           "Worker threads (0 = all hardware threads)");
  add_solver_flags(scenario_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(problem_path, flags, out_path);
    }
    if (certify_cmd->parsed()) {
      return cmd_certify(certify_path, out_path);
    }
    if (export_cmd->parsed()) {
      return cmd_export(problem_path, export_path);
    }
    if (simulate_cmd->parsed()) {
      if (!optimal && povm_path.empty()) {
        std::cerr << "simulate: either --povm or --optimal is required\n";
        return kExitInvalidInput;
      }
      flags.seed = sim_seed;
      return cmd_simulate(problem_path, povm_path, optimal, trials, sim_seed,
                          flags, out_path);
    }
    if (scenario_cmd->parsed()) {
      if (!(phi > 0.0 && phi < std::numbers::pi / 4)) {
        std::cerr << "scenario: --phi must lie in (0, pi/4)\n";
        return kExitInvalidInput;
      }
      return cmd_scenario(phi, points, csv_path, jobs, flags);
    }
  } catch (const qsd::ConvergenceFailure& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNotConverged;
  } catch (const qsd::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
