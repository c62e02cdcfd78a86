#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nash/types.hpp"

namespace nash {

/// One affine piece a·x + b of a max-of-affine term.
struct AffinePiece {
  Vector a;
  double b = 0.0;
};

/// Loss f(x) = max_j(a_j·x + b_j) + ½ xᵀQx + c·x + constant.
/// The max term is dropped when `pieces` is empty.
struct PlayerLoss {
  std::vector<AffinePiece> pieces;
  Matrix quad;    // m×m, symmetric
  Vector linear;  // m
  double constant = 0.0;
};

/// Per-coordinate bounds standing in for the compact strategy set.
struct Box {
  Vector lower;
  Vector upper;

  static Box uniform(int m, double lo, double hi);
  bool contains(const Point& x) const;
  double radius() const;  ///< max ‖x‖₂ over the box
};

/// An m-player game in which player i owns coordinate i and minimizes f_i.
///
/// Immutable after construction. The constructor validates shapes, symmetry of
/// each Q, convexity in the owner's coordinate (Q_ii ≥ 0) and the box, and
/// computes per-player Lipschitz bounds over the box.
class Game {
 public:
  Game(std::vector<PlayerLoss> losses, Box box, std::string name = {});

  int players() const { return static_cast<int>(losses_.size()); }
  const PlayerLoss& loss(int i) const;
  const std::vector<PlayerLoss>& losses() const { return losses_; }
  const Box& box() const { return box_; }
  const std::string& name() const { return name_; }

  double lipschitz(int i) const;
  double max_lipschitz() const;

 private:
  std::vector<PlayerLoss> losses_;
  Box box_;
  std::string name_;
  std::vector<double> lipschitz_;
};

/// f_i(x).
double evaluate(const Game& game, int i, const Point& x);

/// Relative tie tolerance used to decide which affine pieces are active.
inline constexpr double kDefaultTieTol = 1e-12;

/// Exact ∂_{x_i} f_i(x) as an interval. A piece is active when its value is
/// within tie_tol·(1 + |max value|) of the max.
SubgradientInterval subgradient_interval(const Game& game, int i,
                                         const Point& x,
                                         double tie_tol = kDefaultTieTol);

/// Θ(x): the vector of own-coordinate partial derivatives. At a kink the
/// interval midpoint is used and the player index is appended to `nonsmooth`.
Vector residual_theta(const Game& game, const Point& x,
                      std::vector<int>* nonsmooth = nullptr);

/// Analytic bound on the Lipschitz constant of a loss over a box.
double estimate_lipschitz(const PlayerLoss& loss, const Box& box);

/// f_i restricted to the line z + u·e_axis, as scalar data:
///   g(u) = max_j(slope_j·u + offset_j) + ½ curvature·u² + drift·u + base.
class LineRestriction {
 public:
  LineRestriction(const PlayerLoss& loss, const Point& z, int axis);

  double value(double u) const;
  /// Sorted crossings of pairs of affine pieces strictly inside (a, b).
  std::vector<double> crossings(double a, double b) const;

  /// ∫ g(u) w(u) du over [a, b] for a weight w that is linear on [a, b].
  /// `w_a`, `w_b` are the weight values at the ends. Exact (up to rounding)
  /// because g is quadratic between crossings.
  double integrate_linear_weight(double a, double b, double w_a,
                                 double w_b) const;

  const std::vector<double>& slopes() const { return slopes_; }
  const std::vector<double>& offsets() const { return offsets_; }
  double curvature() const { return curvature_; }
  double drift() const { return drift_; }

 private:
  std::vector<double> slopes_;
  std::vector<double> offsets_;
  double curvature_ = 0.0;
  double drift_ = 0.0;
  double base_ = 0.0;
};

/// Thread-local count of loss-oracle evaluations. Solvers read deltas of it
/// to report oracle calls.
std::uint64_t oracle_calls();
void count_oracle_calls(std::uint64_t n);

}  // namespace nash
