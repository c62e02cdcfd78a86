#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"
#include "nash/builtin_games.hpp"
#include "nash/errors.hpp"

namespace {

std::vector<nash::Algorithm> parse_algorithms(const std::string& list) {
  std::vector<nash::Algorithm> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) out.push_back(nash::parse_algorithm(name));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using nash::cli::RunConfig;
  CLI::App app{"Nash equilibria of convex games by coordinate descent and Steklov smoothing"};
  app.require_subcommand(1);

  RunConfig config;
  std::string algorithms = "alg2";
  std::vector<double> x0;
  std::string set = "cube";

  auto* solve = app.add_subcommand("solve", "Run solvers on a game");
  solve->add_option("--game", config.game, "builtin:NAME or path to a game file")
      ->required();
  solve->add_option("--alg", algorithms,
                    "Comma-separated: alg1, exact_cd, alg2, alg3, alg4, alg5, reg_newton")
      ->capture_default_str();
  auto* x0_opt = solve->add_option("--x0", x0, "Start point v1,...,vm")->delimiter(',');
  solve->add_option("--multistart", config.multistart,
                    "Number of random starts in [-start-radius, start-radius]^m")
      ->excludes(x0_opt);
  solve->add_option("--start-radius", config.start_radius, "Half-width of the start region")
      ->capture_default_str();
  solve->add_option("--seed", config.solver.seed, "Seed for starts and ball quadrature")
      ->capture_default_str();
  solve->add_option("--eps", config.solver.eps, "Target residual")->capture_default_str();
  solve->add_option("--max-iters", config.solver.max_iters,
                    "Newton iterations or coordinate sweeps")
      ->capture_default_str();
  solve->add_option("--radius", config.solver.radius, "Initial radius of the averaging set")
      ->capture_default_str();
  solve->add_option("--set", set, "Averaging set")
      ->check(CLI::IsMember({"cube", "ball"}))
      ->capture_default_str();
  solve->add_option("--level", config.solver.quadrature_level, "Quadrature level")
      ->capture_default_str();
  solve->add_option("--order", config.solver.order,
                    "Shrink rule for alg4: 1 is lambda/d, 2 is lambda/d^2")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  solve->add_option("--lambda0", config.solver.lambda0, "Initial constant step")
      ->capture_default_str();
  solve->add_option("--cluster-tol", config.cluster_tol,
                    "Distance under which terminal points share a cluster")
      ->capture_default_str();
  solve->add_option("--trace-dir", config.trace_dir, "Directory for per-run CSV traces");
  solve->add_option("--report", config.report_path, "Path of the JSON report");

  auto* games = app.add_subcommand("games", "List builtin games");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nash::cli::kExitConfig;
  }

  if (games->parsed()) {
    for (const auto& name : nash::builtin_names()) std::cout << "builtin:" << name << '\n';
    return 0;
  }

  try {
    config.algorithms = parse_algorithms(algorithms);
  } catch (const nash::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return nash::cli::kExitConfig;
  }
  if (!x0.empty()) config.x0 = x0;
  config.solver.set_kind = set == "ball" ? nash::SetKind::kBall : nash::SetKind::kCube;
  return nash::cli::run(config, std::cout, std::cerr);
}
