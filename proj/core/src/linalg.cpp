#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "nash/errors.hpp"
#include "nash/solver.hpp"

namespace nash {

Vector newton_direction(const Vector& theta, const Matrix& jac) {
  if (jac.rows() != jac.cols() || jac.rows() != theta.size()) {
    throw DimensionError("newton_direction: shape mismatch");
  }
  if (!jac.allFinite() || !theta.allFinite()) {
    throw NumericalError("newton_direction: non-finite input");
  }
  const Eigen::PartialPivLU<Matrix> lu(jac);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    std::ostringstream os;
    os << "singular Jacobian (reciprocal condition estimate " << rcond << ")";
    throw SingularJacobian(os.str());
  }
  Vector delta = lu.solve(-theta);
  if (!delta.allFinite()) throw SingularJacobian("singular Jacobian");
  return delta;
}

Matrix fd_jacobian(const VectorMap& map, const Point& x) {
  const long m = x.size();
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  Matrix jac(m, m);
  for (long j = 0; j < m; ++j) {
    const double h = base * std::max(1.0, std::abs(x[j]));
    Point plus = x;
    Point minus = x;
    plus[j] += h;
    minus[j] -= h;
    jac.col(j) = (map(plus) - map(minus)) / (plus[j] - minus[j]);
  }
  return jac;
}

Matrix clip_spectral_norm(const Matrix& jac, double bound) {
  const Eigen::JacobiSVD<Matrix> svd(jac);
  const double sigma = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  if (sigma <= bound) return jac;
  return jac * (bound / sigma);
}

}  // namespace nash
