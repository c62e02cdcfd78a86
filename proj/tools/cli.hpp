#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nash/diagnostics.hpp"
#include "nash/solver.hpp"

namespace nash::cli {

enum ExitCode { kExitOk = 0, kExitNotConverged = 1, kExitConfig = 2, kExitGame = 3 };

struct RunConfig {
  std::string game;  ///< "builtin:NAME" or a path to a game file
  std::vector<Algorithm> algorithms{Algorithm::kAlg2};
  std::optional<std::vector<double>> x0;
  int multistart = 0;
  double start_radius = 5.0;
  SolverConfig solver;
  std::string trace_dir;
  std::string report_path;
  double cluster_tol = 1e-3;
};

struct RunRow {
  std::string algorithm;
  int start = 0;
  Point x0;
  std::optional<Trace> trace;
  std::optional<EquilibriumReport> report;
  std::optional<double> distance_to_known;
  std::string error;  ///< set when the solver threw
  std::string trace_file;

  bool converged() const { return trace && trace->converged(); }
  std::string status() const;
};

struct RunResult {
  std::string game;
  std::vector<RunRow> rows;
  std::vector<Point> clusters;
  int exit_code = kExitOk;
};

/// Starting points: x0 alone, or `multistart` points drawn uniformly from the
/// box clipped to [−start_radius, start_radius]^m with seed `solver.seed`.
std::vector<Point> start_points(const RunConfig& config, const Game& game);

/// Groups points whose distance to a cluster's first member is ≤ tol.
std::vector<Point> cluster_points(const std::vector<Point>& points, double tol);

/// Runs every (algorithm, start) pair, writes traces and the report. Throws
/// ConfigError for bad configuration and game errors for bad games.
RunResult execute(const RunConfig& config);

/// One row per run plus the distinct terminal clusters.
std::string compare_table(const RunResult& result);

std::string report_json(const RunResult& result, const RunConfig& config);

/// execute() with error mapping to exit codes; prints a summary to `out` and
/// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nash::cli
