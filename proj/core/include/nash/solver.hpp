#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nash/diagnostics.hpp"
#include "nash/game.hpp"
#include "nash/quadrature.hpp"
#include "nash/steklov.hpp"
#include "nash/trace.hpp"

namespace nash {

enum class Algorithm { kAlg1, kExactCd, kAlg2, kAlg3, kAlg4, kAlg5, kRegNewton };

std::string to_string(Algorithm algorithm);
/// Throws ConfigError for unknown names.
Algorithm parse_algorithm(const std::string& name);
std::vector<std::string> algorithm_names();

struct SolverConfig {
  Algorithm algorithm = Algorithm::kAlg2;
  double eps = 1e-6;
  double lambda0 = 1.0;
  /// Newton iterations, or coordinate sweeps for the descent methods.
  int max_iters = 10000;
  double shrink_rho = 0.5;
  double eps0 = 0.1;
  double gamma = 0.9;
  int order = 1;
  SetKind set_kind = SetKind::kCube;
  double radius = 0.5;
  int quadrature_level = 16;
  std::uint64_t seed = 0;
  double fd_step_factor = 1e-2;
  /// Smallest diameter before the smoothing solvers may stop; 0 means eps.
  double d_min = 0.0;
  /// Smallest constant step; 0 means eps.
  double lambda_min = 0.0;
  /// Sweep cap for one inner run of algorithm 3.
  int inner_max_sweeps = 500;

  double cycle_tol = 1e-9;  ///< scaled by 1 + ‖x‖
  int cycle_max_period = 0;  ///< 0 means 2m + 2
  int divergence_window = 6;
  int max_swaps = 4;
  PermutationMode swap_mode = PermutationMode::kVariables;

  double eps_k(int k) const;
  double effective_d_min() const { return d_min > 0.0 ? d_min : eps; }
  double effective_lambda_min() const {
    return lambda_min > 0.0 ? lambda_min : eps;
  }
  /// Throws ConfigError.
  void validate() const;
};

/// Solves jac·Δ = −theta by LU with partial pivoting. Throws SingularJacobian
/// when jac is singular or its condition estimate exceeds 1e12.
Vector newton_direction(const Vector& theta, const Matrix& jac);

using VectorMap = std::function<Vector(const Point&)>;

/// Argmin of t ↦ ‖F(x + t·dir)‖₂ over [0, 2] by golden section to width tol.
/// t = 1 is returned at once when ‖F(x + dir)‖ < accept. Returns 0 when no
/// t improves on t = 0.
double line_search_residual(const VectorMap& map, const Point& x,
                            const Vector& dir, double tol,
                            std::optional<double> accept = std::nullopt);

/// Ξ(x) = Σ_i Θ_i(x)².
double merit_xi(const Game& game, const Point& x);

/// Central-difference Jacobian of a map, step cbrt(ε)·max(1, |x_j|).
Matrix fd_jacobian(const VectorMap& map, const Point& x);

/// y ↦ theta_at(y) + 2·L_s·(y − anchor).
VectorMap regularized_map(VectorMap theta_at, double L_s, Point anchor);

/// Scales J down to spectral norm `bound` when it exceeds it.
Matrix clip_spectral_norm(const Matrix& jac, double bound);

/// order 1: λ/d ≤ ε_k. order 2: λ/d² < ε_k.
bool check_step_diameter(double lambda, double d, double eps_k, int order);

Trace algorithm1(const Game& game, const Point& x0, const SolverConfig& cfg);
Trace exact_coordinate_descent(const Game& game, const Point& x0,
                               const SolverConfig& cfg);
Trace algorithm2(const Game& game, const Point& x0, const SolverConfig& cfg);
Trace algorithm3(const Game& game, const Point& x0, const SolverConfig& cfg);
Trace algorithm4(const Game& game, const Point& x0, const SolverConfig& cfg);
Trace algorithm5(const Game& game, const Point& x0, const SolverConfig& cfg);

/// Called once per reg_newton iterate with the regularized Jacobian.
using RegNewtonObserver =
    std::function<void(int k, const Point& x, const Matrix& jac_reg, double L_s)>;

Trace reg_newton(const Game& game, const Point& x0, const SolverConfig& cfg,
                 const RegNewtonObserver& observer = {});

/// Dispatches on cfg.algorithm.
Trace solve(const Game& game, const Point& x0, const SolverConfig& cfg);

}  // namespace nash
