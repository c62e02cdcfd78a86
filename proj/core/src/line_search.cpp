#include <cmath>

#include "nash/errors.hpp"
#include "nash/solver.hpp"

namespace nash {

double line_search_residual(const VectorMap& map, const Point& x,
                            const Vector& dir, double tol,
                            std::optional<double> accept) {
  if (dir.size() != x.size()) throw DimensionError("line search: shape mismatch");
  auto value = [&](double t) { return map(x + t * dir).norm(); };
  const double f0 = value(0.0);
  const double f1 = value(1.0);
  if (accept && f1 < *accept) return 1.0;

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0;
  double b = 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = value(c);
  double fd = value(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = value(d);
    }
  }
  double t = fc <= fd ? c : d;
  double ft = std::min(fc, fd);
  if (f1 <= ft) {
    t = 1.0;
    ft = f1;
  }
  return ft < f0 ? t : 0.0;
}

VectorMap regularized_map(VectorMap theta_at, double L_s, Point anchor) {
  return [theta_at = std::move(theta_at), L_s,
          anchor = std::move(anchor)](const Point& y) -> Vector {
    return theta_at(y) + 2.0 * L_s * (y - anchor);
  };
}

bool check_step_diameter(double lambda, double d, double eps_k, int order) {
  if (!(d > 0.0)) throw Error("check_step_diameter: diameter must be positive");
  if (order == 1) return lambda / d <= eps_k;
  if (order == 2) return lambda / (d * d) < eps_k;
  throw Error("check_step_diameter: order must be 1 or 2");
}

}  // namespace nash
