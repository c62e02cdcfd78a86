#include "nash/steklov.hpp"

#include <cmath>
#include <sstream>

#include "nash/errors.hpp"

namespace nash {

SmoothedGame::SmoothedGame(Game base, const AveragingSet& set, int level,
                           std::uint64_t seed, double fd_step_factor,
                           double node_cap)
    : SmoothedGame(base, make_quadrature(set, level, seed, node_cap),
                   set.kind == SetKind::kBall
                       ? make_quadrature(set, level, seed + 1, node_cap)
                       : QuadratureRule{},
                   fd_step_factor, node_cap) {}

SmoothedGame::SmoothedGame(Game base, QuadratureRule rule, QuadratureRule outer,
                           double fd_step_factor, double node_cap)
    : base_(std::move(base)),
      rule_(std::move(rule)),
      outer_(std::move(outer)),
      fd_step_factor_(fd_step_factor),
      node_cap_(node_cap) {
  if (rule_.set.m != base_.players()) {
    throw DimensionError("averaging set dimension does not match the game");
  }
  if (!(fd_step_factor_ > 0.0 && fd_step_factor_ < 0.5)) {
    throw Error("fd_step_factor must lie in (0, 0.5)");
  }
  build_transverse();
}

void SmoothedGame::build_transverse() {
  transverse_.clear();
  if (!rule_.tensor()) return;
  const int m = players();
  const int level = rule_.level;
  const double count = std::pow(static_cast<double>(level), m - 1);
  transverse_.resize(m);
  for (int i = 0; i < m; ++i) {
    auto& offsets = transverse_[i];
    offsets.reserve(static_cast<std::size_t>(count));
    std::vector<int> idx(m, 0);
    for (std::size_t n = 0; n < static_cast<std::size_t>(count); ++n) {
      Vector y = Vector::Zero(m);
      for (int d = 0; d < m; ++d) {
        if (d != i) y[d] = rule_.axis[idx[d]];
      }
      offsets.push_back(std::move(y));
      for (int d = 0; d < m; ++d) {
        if (d == i) continue;
        if (++idx[d] < level) break;
        idx[d] = 0;
      }
    }
  }
}

SmoothedGame SmoothedGame::with_radius(double radius) const {
  const double factor = radius / rule_.set.radius;
  return SmoothedGame(base_, rule_.scaled(factor),
                      outer_.nodes.empty() ? QuadratureRule{} : outer_.scaled(factor),
                      fd_step_factor_, node_cap_);
}

void SmoothedGame::check_outer_budget() const {
  const double n = static_cast<double>(transverse_.front().size());
  if (n * n > node_cap_) {
    std::ostringstream os;
    os << "second smoothing layer needs " << n * n
       << " line integrals per call (cap " << node_cap_
       << "); reduce the quadrature level or use a ball set";
    throw QuadratureBudgetError(os.str());
  }
}

void SmoothedGame::check(int i, const Point& x) const {
  base_.loss(i);
  if (x.size() != players()) {
    std::ostringstream os;
    os << "point has dimension " << x.size() << ", game has " << players()
       << " players";
    throw DimensionError(os.str());
  }
}

double SmoothedGame::phi_tensor(int i, const Point& x) const {
  const double r = rule_.set.radius;
  const double w = 1.0 / (2.0 * r);
  const PlayerLoss& loss = base_.loss(i);
  double sum = 0.0;
  for (const auto& y : transverse_[i]) {
    sum += LineRestriction(loss, x + y, i).integrate_linear_weight(-r, r, w, w);
  }
  return sum / static_cast<double>(transverse_[i].size());
}

double SmoothedGame::phi_grad_tensor(int i, const Point& x) const {
  const double r = rule_.set.radius;
  const PlayerLoss& loss = base_.loss(i);
  double sum = 0.0;
  for (const auto& y : transverse_[i]) {
    const LineRestriction line(loss, x + y, i);
    sum += line.value(r) - line.value(-r);
  }
  return sum / (2.0 * r * static_cast<double>(transverse_[i].size()));
}

double SmoothedGame::phi(int i, const Point& x) const {
  check(i, x);
  if (rule_.tensor()) return phi_tensor(i, x);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule_.size(); ++j) {
    sum += rule_.weights[j] * evaluate(base_, i, x + rule_.nodes[j]);
  }
  return sum;
}

double SmoothedGame::phi_grad_own(int i, const Point& x) const {
  check(i, x);
  if (rule_.tensor()) return phi_grad_tensor(i, x);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule_.size(); ++j) {
    sum += rule_.weights[j] *
           subgradient_interval(base_, i, x + rule_.nodes[j]).midpoint();
  }
  return sum;
}

Vector SmoothedGame::phi_grad_vector(const Point& x) const {
  Vector g(players());
  for (int i = 0; i < players(); ++i) g[i] = phi_grad_own(i, x);
  return g;
}

double SmoothedGame::Phi(int i, const Point& x) const {
  check(i, x);
  if (!rule_.tensor()) {
    double sum = 0.0;
    for (std::size_t j = 0; j < outer_.size(); ++j) {
      sum += outer_.weights[j] * phi(i, x + outer_.nodes[j]);
    }
    return sum;
  }
  // Two uniform averages along the own axis compose to a triangular kernel.
  check_outer_budget();
  const double r = rule_.set.radius;
  const double peak = 1.0 / (2.0 * r);
  const PlayerLoss& loss = base_.loss(i);
  const auto& offsets = transverse_[i];
  double sum = 0.0;
  for (const auto& outer : offsets) {
    for (const auto& inner : offsets) {
      const LineRestriction line(loss, x + outer + inner, i);
      sum += line.integrate_linear_weight(-2.0 * r, 0.0, 0.0, peak) +
             line.integrate_linear_weight(0.0, 2.0 * r, peak, 0.0);
    }
  }
  const double n = static_cast<double>(offsets.size());
  return sum / (n * n);
}

double SmoothedGame::Phi_grad_own(int i, const Point& x) const {
  check(i, x);
  if (!rule_.tensor()) {
    double sum = 0.0;
    for (std::size_t j = 0; j < outer_.size(); ++j) {
      sum += outer_.weights[j] * phi_grad_own(i, x + outer_.nodes[j]);
    }
    return sum;
  }
  check_outer_budget();
  const double r = rule_.set.radius;
  Vector shift = Vector::Zero(players());
  shift[i] = r;
  double sum = 0.0;
  for (const auto& y : transverse_[i]) {
    const Point z = x + y;
    sum += phi_tensor(i, z + shift) - phi_tensor(i, z - shift);
  }
  return sum / (2.0 * r * static_cast<double>(transverse_[i].size()));
}

Vector SmoothedGame::Phi_grad_vector(const Point& x) const {
  Vector g(players());
  for (int i = 0; i < players(); ++i) g[i] = Phi_grad_own(i, x);
  return g;
}

Matrix SmoothedGame::Phi_hessian(const Point& x, std::optional<double> h) const {
  const int m = players();
  const double step = h.value_or(fd_step_factor_ * set().diameter());
  if (!(step > 0.0)) throw Error("Phi_hessian: step must be positive");
  Matrix hess(m, m);
  for (int j = 0; j < m; ++j) {
    Point plus = x;
    Point minus = x;
    plus[j] += step;
    minus[j] -= step;
    for (int i = 0; i < m; ++i) {
      hess(i, j) = (Phi_grad_own(i, plus) - Phi_grad_own(i, minus)) / (2.0 * step);
    }
  }
  if (!hess.allFinite()) {
    std::ostringstream os;
    os << "non-finite smoothed Jacobian at x = " << x.transpose()
       << " (radius " << set().radius << ")";
    throw NumericalError(os.str());
  }
  return hess;
}

double lipschitz_phi_grad(double lipschitz, const AveragingSet& set) {
  return lipschitz / set.diameter();
}

double lipschitz_Phi_hess(double lipschitz, const AveragingSet& set) {
  const double d = set.diameter();
  return 2.0 * lipschitz / (d * d);
}

}  // namespace nash
