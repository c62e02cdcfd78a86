#include "nash/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nash/best_response.hpp"
#include "nash/errors.hpp"

namespace nash {

std::optional<int> detect_cycle(const std::vector<Point>& history, double tol,
                                int max_period, int min_period) {
  const int n = static_cast<int>(history.size());
  for (int p = std::max(1, min_period); p <= max_period && 2 * p <= n; ++p) {
    bool repeats = true;
    for (int k = n - p; k < n && repeats; ++k) {
      repeats = (history[k] - history[k - p]).norm() <= tol;
    }
    if (repeats) return p;
  }
  return std::nullopt;
}

bool detect_divergence(const std::vector<Point>& history, int window,
                       const Box& box, int max_lag) {
  if (history.empty()) return false;
  if (!box.contains(history.back())) return true;
  const int n = static_cast<int>(history.size());
  for (int p = 1; p <= max_lag; ++p) {
    // window increasing distances need window + 1 of them.
    if (n < p + window + 1) break;
    bool growing = true;
    double prev = (history[n - window - 1] - history[n - window - 1 - p]).norm();
    for (int k = n - window; k < n && growing; ++k) {
      const double d = (history[k] - history[k - p]).norm();
      growing = d > prev;
      prev = d;
    }
    if (growing) return true;
  }
  return false;
}

Point average_points(const std::vector<Point>& points,
                     const std::vector<double>& weights) {
  if (points.empty()) throw Error("average_points: no points");
  if (!weights.empty()) {
    if (weights.size() != points.size()) {
      throw DimensionError("average_points: one weight per point required");
    }
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw Error("average_points: weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw Error("average_points: weights must sum to 1");
    }
  }
  Point avg = Point::Zero(points.front().size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != avg.size()) {
      throw DimensionError("average_points: points differ in dimension");
    }
    const double w = weights.empty() ? 1.0 / static_cast<double>(points.size())
                                     : weights[j];
    avg += w * points[j];
  }
  return avg;
}

Point PermutedGame::to_permuted(const Point& x) const {
  Point y(x.size());
  for (std::size_t k = 0; k < perm.size(); ++k) y[k] = x[perm[k]];
  return y;
}

Point PermutedGame::from_permuted(const Point& y) const {
  Point x(y.size());
  for (std::size_t k = 0; k < perm.size(); ++k) x[perm[k]] = y[k];
  return x;
}

namespace {

Vector permute_vector(const Vector& v, const std::vector<int>& perm) {
  Vector out(v.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[k] = v[perm[k]];
  return out;
}

PlayerLoss relabel(const PlayerLoss& loss, const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  PlayerLoss out;
  for (const auto& piece : loss.pieces) {
    out.pieces.push_back({permute_vector(piece.a, perm), piece.b});
  }
  out.quad.resize(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) out.quad(k, l) = loss.quad(perm[k], perm[l]);
  }
  out.linear = permute_vector(loss.linear, perm);
  out.constant = loss.constant;
  return out;
}

}  // namespace

PermutedGame permute_game(const Game& game, const std::vector<int>& perm,
                          PermutationMode mode) {
  const int m = game.players();
  std::vector<int> inverse(m, -1);
  if (static_cast<int>(perm.size()) != m) {
    throw DimensionError("permutation length does not match the game");
  }
  for (int k = 0; k < m; ++k) {
    if (perm[k] < 0 || perm[k] >= m || inverse[perm[k]] != -1) {
      throw Error("not a permutation of 0..m-1");
    }
    inverse[perm[k]] = k;
  }
  std::vector<PlayerLoss> losses;
  losses.reserve(m);
  for (int k = 0; k < m; ++k) {
    const int source = mode == PermutationMode::kVariables ? k : perm[k];
    losses.push_back(relabel(game.loss(source), perm));
  }
  Box box{permute_vector(game.box().lower, perm),
          permute_vector(game.box().upper, perm)};
  return PermutedGame{Game(std::move(losses), std::move(box), game.name()), perm,
                      std::move(inverse)};
}

double EquilibriumReport::max_residual() const {
  return per_player_residual.size() ? per_player_residual.maxCoeff() : 0.0;
}

Vector subgradient_residuals(const Game& game, const Point& x) {
  Vector r(game.players());
  for (int i = 0; i < game.players(); ++i) {
    r[i] = subgradient_interval(game, i, x).distance_to_zero();
  }
  return r;
}

namespace {

Vector best_response_gaps(const Game& game, const Point& x, int grid_n) {
  Vector gap(game.players());
  for (int i = 0; i < game.players(); ++i) {
    gap[i] = std::abs(x[i] - best_response_oracle(game, i, x, grid_n));
  }
  return gap;
}

}  // namespace

EquilibriumReport certify_equilibrium(const Game& game, const Point& x,
                                      double tol, int grid_n) {
  EquilibriumReport report;
  report.point = x;
  report.per_player_residual = subgradient_residuals(game, x);
  report.best_response_gap = best_response_gaps(game, x, grid_n);
  report.tol = tol;
  report.is_equilibrium = report.max_residual() <= tol;
  return report;
}

EquilibriumReport certify_epsD(const Game& game, const Point& x,
                               const AveragingSet& set,
                               const QuadratureRule& rule, double tol,
                               const CertifyOptions& options) {
  const int m = game.players();
  if (x.size() != m || set.m != m) {
    throw DimensionError("certify_epsD: dimension mismatch");
  }
  EquilibriumReport report;
  report.point = x;
  report.per_player_residual = subgradient_residuals(game, x);
  if (options.best_response_gap) {
    report.best_response_gap = best_response_gaps(game, x, 2001);
  }
  report.tol = tol;
  report.is_equilibrium = report.max_residual() <= tol;

  std::vector<Vector> offsets{Vector::Zero(m)};
  std::vector<double> scores{report.max_residual()};
  for (const auto& y : rule.nodes) {
    offsets.push_back(y);
    scores.push_back(subgradient_residuals(game, x + y).maxCoeff());
  }
  std::vector<std::size_t> order(offsets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin() + 1, order.end(), [&](auto a, auto b) {
    return scores[a] < scores[b];
  });

  auto accept = [&](const Point& z) {
    const Vector r = subgradient_residuals(game, z);
    if (r.maxCoeff() > tol || !set.contains(z - x)) return false;
    report.epsD_certificate = EpsDCertificate{set, z, z - x, r};
    return true;
  };

  const int tries =
      std::min<int>(static_cast<int>(order.size()), options.max_candidates);
  for (int c = 0; c < tries; ++c) {
    Point z = x + offsets[order[c]];
    if (accept(z)) return report;
    for (int sweep = 0; sweep < options.polish_sweeps; ++sweep) {
      const Point before = z;
      bool inside = true;
      for (int i = 0; i < m && inside; ++i) {
        z[i] = exact_best_response(game, i, z);
        inside = set.contains(z - x);
      }
      if (!inside) break;
      if (accept(z)) return report;
      if (z == before) break;
    }
  }
  return report;
}

}  // namespace nash
