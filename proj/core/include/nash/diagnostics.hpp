#pragma once

#include <optional>
#include <vector>

#include "nash/game.hpp"
#include "nash/quadrature.hpp"

namespace nash {

/// Smallest p in [min_period, max_period] such that the last 2p entries repeat
/// with period p: ‖h_k − h_{k−p}‖ ≤ tol for the last p indices k.
std::optional<int> detect_cycle(const std::vector<Point>& history, double tol,
                                int max_period, int min_period = 1);

/// True when the last point leaves the box, or when for some lag p ≤ max_lag
/// the distances ‖h_k − h_{k−p}‖ increase strictly over the last `window`
/// indices. Lag 1 is the plain consecutive-step test; coordinate-by-coordinate
/// histories of an m-player sweep need lags up to m.
bool detect_divergence(const std::vector<Point>& history, int window,
                       const Box& box, int max_lag = 1);

/// Convex combination of the points; equal weights when none are given.
Point average_points(const std::vector<Point>& points,
                     const std::vector<double>& weights = {});

enum class PermutationMode {
  /// Losses keep their index and player k moves coordinate x_{perm[k]}.
  kVariables,
  /// Full relabelling: player k of the new game is old player perm[k].
  kPlayersAndVariables,
};

/// A game relabelled by y_k = x_{perm[k]}.
struct PermutedGame {
  Game game;
  std::vector<int> perm;
  std::vector<int> inverse;

  Point to_permuted(const Point& x) const;
  Point from_permuted(const Point& y) const;
};

/// Throws Error when perm is not a permutation of 0..m−1, and ConvexityError
/// when a relabelled loss is not convex in its new own coordinate.
PermutedGame permute_game(const Game& game, const std::vector<int>& perm,
                          PermutationMode mode = PermutationMode::kVariables);

struct EpsDCertificate {
  AveragingSet set;
  Point witness;
  Vector offset;  ///< witness − point, inside the set
  Vector residual;
};

struct EquilibriumReport {
  Point point;
  Vector per_player_residual;
  /// |x_i − BR_i(x)| from the grid oracle; empty when not computed.
  Vector best_response_gap;
  double tol = 0.0;
  bool is_equilibrium = false;
  std::optional<EpsDCertificate> epsD_certificate;

  double max_residual() const;
};

/// Per-player distance(0, ∂_{x_i} f_i(x)).
Vector subgradient_residuals(const Game& game, const Point& x);

EquilibriumReport certify_equilibrium(const Game& game, const Point& x,
                                      double tol, int grid_n = 2001);

struct CertifyOptions {
  int max_candidates = 16;
  int polish_sweeps = 200;
  bool best_response_gap = false;
};

/// Looks for a point of x + D where every residual is ≤ tol: tries y = 0 and
/// then the rule's nodes in order of their residual, each polished by exact
/// best-response sweeps that stay inside x + D.
EquilibriumReport certify_epsD(const Game& game, const Point& x,
                               const AveragingSet& set,
                               const QuadratureRule& rule, double tol,
                               const CertifyOptions& options = {});

}  // namespace nash
