#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "nash/builtin_games.hpp"
#include "nash/errors.hpp"
#include "nash/game_io.hpp"

namespace nash::cli {

namespace {

class GameLoadError : public Error {
 public:
  using Error::Error;
};

constexpr std::string_view kBuiltinPrefix = "builtin:";

std::optional<std::string> builtin_name(const std::string& source) {
  if (source.rfind(kBuiltinPrefix, 0) != 0) return std::nullopt;
  return source.substr(kBuiltinPrefix.size());
}

std::vector<double> to_vector(const Vector& v) {
  return {v.data(), v.data() + v.size()};
}

std::string fmt(double v, const char* spec = "%.3e") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void validate(const RunConfig& config) {
  config.solver.validate();
  if (config.game.empty()) throw ConfigError("no game given");
  if (config.algorithms.empty()) throw ConfigError("no algorithm given");
  if (config.x0 && config.multistart > 0) {
    throw ConfigError("give either --x0 or --multistart, not both");
  }
  if (!config.x0 && config.multistart < 1) {
    throw ConfigError("give --x0 or --multistart N with N >= 1");
  }
  if (!(config.start_radius > 0.0)) throw ConfigError("start radius must be positive");
  if (!(config.cluster_tol > 0.0)) throw ConfigError("cluster tolerance must be positive");
}

}  // namespace

std::string RunRow::status() const {
  if (!error.empty()) return "error";
  return trace ? to_string(trace->status) : "error";
}

std::vector<Point> start_points(const RunConfig& config, const Game& game) {
  const int m = game.players();
  if (config.x0) {
    if (static_cast<int>(config.x0->size()) != m) {
      std::ostringstream os;
      os << "--x0 has " << config.x0->size() << " values, game has " << m
         << " players";
      throw ConfigError(os.str());
    }
    Point x = Eigen::Map<const Vector>(config.x0->data(), m);
    if (!game.box().contains(x)) throw ConfigError("--x0 lies outside the box");
    return {x};
  }
  std::mt19937_64 rng(config.solver.seed);
  std::vector<Point> starts;
  for (int n = 0; n < config.multistart; ++n) {
    Point x(m);
    for (int j = 0; j < m; ++j) {
      const double lo = std::max(game.box().lower[j], -config.start_radius);
      const double hi = std::min(game.box().upper[j], config.start_radius);
      std::uniform_real_distribution<double> dist(lo, hi);
      x[j] = dist(rng);
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

std::vector<Point> cluster_points(const std::vector<Point>& points, double tol) {
  std::vector<Point> clusters;
  for (const auto& p : points) {
    const bool known = std::any_of(clusters.begin(), clusters.end(),
                                   [&](const Point& c) { return (c - p).norm() <= tol; });
    if (!known) clusters.push_back(p);
  }
  return clusters;
}

RunResult execute(const RunConfig& config) {
  validate(config);
  RunResult result;
  result.game = config.game;
  const auto name = builtin_name(config.game);
  std::optional<Game> loaded;
  try {
    loaded.emplace(load_game(config.game));
  } catch (const Error& e) {
    throw GameLoadError(e.what());
  }
  const Game& game = *loaded;
  const std::vector<Point> starts = start_points(config, game);
  if (!config.trace_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.trace_dir, ec);
    if (ec) throw ConfigError("cannot create trace directory " + config.trace_dir);
  }

  std::vector<Point> terminal;
  for (Algorithm algorithm : config.algorithms) {
    SolverConfig cfg = config.solver;
    cfg.algorithm = algorithm;
    for (std::size_t s = 0; s < starts.size(); ++s) {
      RunRow row;
      row.algorithm = to_string(algorithm);
      row.start = static_cast<int>(s);
      row.x0 = starts[s];
      try {
        row.trace = solve(game, starts[s], cfg);
      } catch (const ConfigError&) {
        throw;
      } catch (const QuadratureBudgetError&) {
        throw;
      } catch (const Error& e) {
        row.error = e.what();
      }
      if (row.trace) {
        const Point& x = row.trace->final_point;
        row.report = certify_equilibrium(game, x, cfg.eps);
        if (name) row.distance_to_known = distance_to_known_equilibrium(*name, x);
        if (row.trace->converged()) terminal.push_back(x);
        if (!config.trace_dir.empty()) {
          const auto path = std::filesystem::path(config.trace_dir) /
                            (row.algorithm + "_start" + std::to_string(s) + ".csv");
          std::ofstream os(path, std::ios::binary);
          if (!os) throw ConfigError("cannot write trace file " + path.string());
          write_trace_csv(os, *row.trace);
          row.trace_file = path.string();
        }
      }
      if (!row.converged()) result.exit_code = kExitNotConverged;
      result.rows.push_back(std::move(row));
    }
  }
  result.clusters = cluster_points(terminal, config.cluster_tol);

  if (!config.report_path.empty()) {
    std::ofstream os(config.report_path, std::ios::binary);
    if (!os) throw ConfigError("cannot write report " + config.report_path);
    os << report_json(result, config) << '\n';
  }
  return result;
}

std::string compare_table(const RunResult& result) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %5s %7s %12s %11s %11s  %s\n",
                "algorithm", "start", "iters", "oracle_calls", "residual",
                "dist_known", "status");
  os << line;
  for (const auto& row : result.rows) {
    const std::string iters = row.trace ? std::to_string(row.trace->iterations) : "-";
    const std::string calls = row.trace ? std::to_string(row.trace->oracle_calls) : "-";
    const std::string res = row.report ? fmt(row.report->max_residual()) : "-";
    const std::string dist = row.distance_to_known ? fmt(*row.distance_to_known) : "-";
    std::snprintf(line, sizeof line, "%-11s %5d %7s %12s %11s %11s  %s\n",
                  row.algorithm.c_str(), row.start, iters.c_str(), calls.c_str(),
                  res.c_str(), dist.c_str(), row.status().c_str());
    os << line;
  }
  os << "distinct equilibrium candidates: " << result.clusters.size() << '\n';
  for (const auto& c : result.clusters) {
    os << "  (";
    for (long j = 0; j < c.size(); ++j) os << (j ? ", " : "") << fmt(c[j], "%.6g");
    os << ")\n";
  }
  return os.str();
}

std::string report_json(const RunResult& result, const RunConfig& config) {
  using nlohmann::json;
  json runs = json::array();
  for (const auto& row : result.rows) {
    json r;
    r["algorithm"] = row.algorithm;
    r["start"] = row.start;
    r["x0"] = to_vector(row.x0);
    r["status"] = row.status();
    if (!row.error.empty()) r["error"] = row.error;
    if (row.trace) {
      r["iterations"] = row.trace->iterations;
      r["oracle_calls"] = row.trace->oracle_calls;
      r["final_point"] = to_vector(row.trace->final_point);
      r["trace_residual"] = row.trace->final_residual();
      if (row.trace->cycle_period) r["cycle_period"] = *row.trace->cycle_period;
    }
    if (row.report) {
      json rep;
      rep["point"] = to_vector(row.report->point);
      rep["per_player_residual"] = to_vector(row.report->per_player_residual);
      rep["best_response_gap"] = to_vector(row.report->best_response_gap);
      rep["tol"] = row.report->tol;
      rep["is_equilibrium"] = row.report->is_equilibrium;
      r["report"] = rep;
    }
    if (row.distance_to_known) r["distance_to_known"] = *row.distance_to_known;
    if (!row.trace_file.empty()) r["trace_file"] = row.trace_file;
    runs.push_back(std::move(r));
  }
  json clusters = json::array();
  for (const auto& c : result.clusters) clusters.push_back(to_vector(c));
  json out;
  out["game"] = result.game;
  out["seed"] = config.solver.seed;
  out["eps"] = config.solver.eps;
  out["runs"] = std::move(runs);
  out["clusters"] = std::move(clusters);
  out["exit_code"] = result.exit_code;
  return out.dump(2);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const RunResult result = execute(config);
    const bool table = config.algorithms.size() > 1 || result.rows.size() > 1;
    if (table) {
      out << compare_table(result);
    } else {
      for (const auto& row : result.rows) {
        out << row.algorithm << ": " << row.status();
        if (row.report) {
          out << ", final point (";
          const Point& x = row.report->point;
          for (long j = 0; j < x.size(); ++j) out << (j ? ", " : "") << fmt(x[j], "%.9g");
          out << "), residual " << fmt(row.report->max_residual());
        }
        if (!row.error.empty()) out << ": " << row.error;
        out << '\n';
      }
    }
    return result.exit_code;
  } catch (const GameLoadError& e) {
    err << "game error: " << e.what() << '\n';
    return kExitGame;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const QuadratureBudgetError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

}  // namespace nash::cli
