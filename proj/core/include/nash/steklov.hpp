#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nash/game.hpp"
#include "nash/quadrature.hpp"

namespace nash {

/// Steklov averages of a game's losses over a set D:
///
///   φ_i(x) = (1/μ(D)) ∫_D f_i(x + y) dy,   Φ_i(x) = (1/μ(D)) ∫_D φ_i(x + y) dy.
///
/// For cube sets the integral along the player's own coordinate is evaluated
/// in closed form (the loss is piecewise quadratic on a coordinate line) and
/// the remaining m − 1 coordinates use the midpoint grid. φ'_i is then the
/// exact x_i-derivative of the computed φ_i:
///
///   φ'_i(x) = Σ_y' w' [f_i(x + y' + r e_i) − f_i(x + y' − r e_i)] / (2r),
///
/// and likewise Φ'_i from φ_i. Ball sets average node values and
/// subgradient-interval midpoints, with the outer layer of Φ on an
/// independently seeded rule.
class SmoothedGame {
 public:
  SmoothedGame(Game base, const AveragingSet& set, int level,
               std::uint64_t seed = 0, double fd_step_factor = 1e-2,
               double node_cap = kDefaultNodeCap);

  const Game& base() const { return base_; }
  const AveragingSet& set() const { return rule_.set; }
  const QuadratureRule& rule() const { return rule_; }
  int players() const { return base_.players(); }
  double fd_step_factor() const { return fd_step_factor_; }
  double node_cap() const { return node_cap_; }

  /// Same game and rule family on the set scaled to `radius`.
  SmoothedGame with_radius(double radius) const;

  double phi(int i, const Point& x) const;
  double phi_grad_own(int i, const Point& x) const;
  Vector phi_grad_vector(const Point& x) const;

  double Phi(int i, const Point& x) const;
  double Phi_grad_own(int i, const Point& x) const;
  Vector Phi_grad_vector(const Point& x) const;
  /// Row i holds central differences of ∂Φ_i/∂x_i in every coordinate, with
  /// step h (default fd_step_factor·d(D)). Not symmetric in general.
  Matrix Phi_hessian(const Point& x, std::optional<double> h = std::nullopt) const;

 private:
  SmoothedGame(Game base, QuadratureRule rule, QuadratureRule outer,
               double fd_step_factor, double node_cap);
  void build_transverse();
  void check(int i, const Point& x) const;
  void check_outer_budget() const;
  double phi_tensor(int i, const Point& x) const;
  double phi_grad_tensor(int i, const Point& x) const;

  Game base_;
  QuadratureRule rule_;
  QuadratureRule outer_;
  double fd_step_factor_;
  double node_cap_;
  // Cube only: per player, midpoint-grid offsets in the other coordinates.
  std::vector<std::vector<Vector>> transverse_;
};

/// Lipschitz constant of φ'_i: L_i / d(D).
double lipschitz_phi_grad(double lipschitz, const AveragingSet& set);

/// Lipschitz constant of Φ''_i: 2 L_i / d(D)².
double lipschitz_Phi_hess(double lipschitz, const AveragingSet& set);

}  // namespace nash
