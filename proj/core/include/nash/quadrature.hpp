#pragma once

#include <cstdint>
#include <vector>

#include "nash/types.hpp"

namespace nash {

enum class SetKind { kBall, kCube };

/// Averaging set D centred at the origin: a Euclidean ball of the given radius
/// or the cube [−radius, radius]^m.
struct AveragingSet {
  SetKind kind = SetKind::kCube;
  double radius = 0.5;
  int m = 1;

  AveragingSet() = default;
  AveragingSet(SetKind kind, double radius, int m);

  double diameter() const;
  double measure() const;
  bool contains(const Vector& y, double slack = 1e-12) const;
  AveragingSet scaled(double factor) const;
};

inline constexpr double kDefaultNodeCap = 1e6;

/// Nodes and weights approximating (1/μ(D)) ∫_D · dy.
///
/// Cube rules are tensor-product midpoint grids and keep their 1-D axis grid in
/// `axis`, which lets the smoothing code integrate exactly along one
/// coordinate. Ball rules are scrambled Halton points rejected into the ball
/// and symmetrized (y, −y); `axis` is empty for them.
struct QuadratureRule {
  AveragingSet set;
  int level = 0;
  std::uint64_t seed = 0;
  std::vector<Vector> nodes;
  std::vector<double> weights;
  std::vector<double> axis;

  bool tensor() const { return !axis.empty(); }
  std::size_t size() const { return nodes.size(); }
  /// The same rule for D scaled by `factor` (nodes scale, weights do not).
  QuadratureRule scaled(double factor) const;
};

/// Throws QuadratureBudgetError when the node count would exceed node_cap.
QuadratureRule make_quadrature(const AveragingSet& set, int level,
                               std::uint64_t seed,
                               double node_cap = kDefaultNodeCap);

}  // namespace nash
