#include <cmath>
#include <sstream>

#include "nash/errors.hpp"
#include "nash/solver.hpp"

namespace nash {

namespace {

struct AlgorithmName {
  Algorithm algorithm;
  const char* name;
};

constexpr AlgorithmName kNames[] = {
    {Algorithm::kAlg1, "alg1"},   {Algorithm::kExactCd, "exact_cd"},
    {Algorithm::kAlg2, "alg2"},   {Algorithm::kAlg3, "alg3"},
    {Algorithm::kAlg4, "alg4"},   {Algorithm::kAlg5, "alg5"},
    {Algorithm::kRegNewton, "reg_newton"},
};

}  // namespace

std::string to_string(Algorithm algorithm) {
  for (const auto& entry : kNames) {
    if (entry.algorithm == algorithm) return entry.name;
  }
  return "alg2";
}

Algorithm parse_algorithm(const std::string& name) {
  for (const auto& entry : kNames) {
    if (name == entry.name) return entry.algorithm;
  }
  std::ostringstream os;
  os << "unknown algorithm '" << name << "' (expected one of";
  for (const auto& entry : kNames) os << ' ' << entry.name;
  os << ')';
  throw ConfigError(os.str());
}

std::vector<std::string> algorithm_names() {
  std::vector<std::string> names;
  for (const auto& entry : kNames) names.emplace_back(entry.name);
  return names;
}

double SolverConfig::eps_k(int k) const {
  return eps0 * std::pow(gamma, static_cast<double>(k));
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(eps > 0.0)) fail("eps must be positive");
  if (!(lambda0 > 0.0)) fail("lambda0 must be positive");
  if (max_iters < 0) fail("max_iters must be nonnegative");
  if (!(shrink_rho > 0.0 && shrink_rho < 1.0)) fail("shrink_rho must lie in (0, 1)");
  if (!(eps0 > 0.0)) fail("eps0 must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must lie in (0, 1)");
  if (order != 1 && order != 2) fail("order must be 1 or 2");
  if (!(radius > 0.0)) fail("radius must be positive");
  if (quadrature_level < 1) fail("quadrature level must be at least 1");
  if (!(fd_step_factor > 0.0 && fd_step_factor < 0.5)) {
    fail("fd_step_factor must lie in (0, 0.5)");
  }
  if (d_min < 0.0 || lambda_min < 0.0) fail("d_min and lambda_min must be nonnegative");
  if (inner_max_sweeps < 1) fail("inner_max_sweeps must be positive");
  if (!(cycle_tol > 0.0)) fail("cycle_tol must be positive");
  if (cycle_max_period < 0) fail("cycle_max_period must be nonnegative");
  if (divergence_window < 2) fail("divergence_window must be at least 2");
  if (max_swaps < 0) fail("max_swaps must be nonnegative");
}

}  // namespace nash
