#include "nash/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nash/errors.hpp"

namespace nash {

double best_response_oracle(const Game& game, int i, const Point& x, int grid_n) {
  if (grid_n < 3) throw Error("best_response_oracle: grid_n must be >= 3");
  const double lo = game.box().lower[i];
  const double hi = game.box().upper[i];
  Point probe = x;
  const auto f = [&](double t) {
    probe[i] = t;
    return evaluate(game, i, probe);
  };

  const double step = (hi - lo) / (grid_n - 1);
  int best_k = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_n; ++k) {
    const double v = f(lo + k * step);
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }

  double a = std::max(lo, lo + (best_k - 1) * step);
  double b = std::min(hi, lo + (best_k + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return f(t) <= best_v ? t : lo + best_k * step;
}

double exact_best_response(const Game& game, int i, const Point& x) {
  const PlayerLoss& loss = game.loss(i);
  const double lo = game.box().lower[i];
  const double hi = game.box().upper[i];
  const double current = x[i];

  // Restrict to the line through (x with x_i = 0) so u is the coordinate itself.
  Point base = x;
  base[i] = 0.0;
  const LineRestriction line(loss, base, i);

  std::vector<double> candidates{lo, hi, std::clamp(current, lo, hi)};
  const auto& slopes = line.slopes();
  const double q = line.curvature();
  const double p = line.drift();
  if (q > 0.0) {
    if (slopes.empty()) candidates.push_back(-p / q);
    for (double s : slopes) candidates.push_back(-(s + p) / q);
  }
  for (double t : line.crossings(lo, hi)) candidates.push_back(t);

  double best_t = current;
  double best_v = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    if (!(t >= lo && t <= hi)) continue;
    const double v = line.value(t);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(v));
    if (v < best_v - tol ||
        (std::abs(v - best_v) <= tol && std::abs(t - current) < std::abs(best_t - current))) {
      best_v = std::min(best_v, v);
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace nash
