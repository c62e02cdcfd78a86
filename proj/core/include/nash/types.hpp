#pragma once

#include <Eigen/Dense>

namespace nash {

/// Joint strategy vector x = (x_1, ..., x_m), one real coordinate per player.
using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed interval [lo, hi] of own-coordinate subgradients.
struct SubgradientInterval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
  bool degenerate() const { return lo == hi; }
  bool contains(double w, double tol = 0.0) const {
    return w >= lo - tol && w <= hi + tol;
  }
  /// Distance from 0 to the interval; zero iff 0 is a subgradient.
  double distance_to_zero() const {
    if (lo > 0.0) return lo;
    if (hi < 0.0) return -hi;
    return 0.0;
  }
};

}  // namespace nash
