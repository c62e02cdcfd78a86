#include "nash/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nash/errors.hpp"

namespace nash {

namespace {

thread_local std::uint64_t tls_oracle_calls = 0;

void check_point(const Game& game, const Point& x) {
  if (x.size() != game.players()) {
    std::ostringstream os;
    os << "point has dimension " << x.size() << ", game has "
       << game.players() << " players";
    throw DimensionError(os.str());
  }
}

double max_piece_value(const PlayerLoss& loss, const Point& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : loss.pieces) best = std::max(best, p.a.dot(x) + p.b);
  return best;
}

}  // namespace

std::uint64_t oracle_calls() { return tls_oracle_calls; }
void count_oracle_calls(std::uint64_t n) { tls_oracle_calls += n; }

Box Box::uniform(int m, double lo, double hi) {
  return Box{Vector::Constant(m, lo), Vector::Constant(m, hi)};
}

bool Box::contains(const Point& x) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (!(x[k] >= lower[k] && x[k] <= upper[k])) return false;
  }
  return true;
}

double Box::radius() const {
  return lower.cwiseAbs().cwiseMax(upper.cwiseAbs()).norm();
}

Game::Game(std::vector<PlayerLoss> losses, Box box, std::string name)
    : losses_(std::move(losses)), box_(std::move(box)), name_(std::move(name)) {
  const int m = players();
  if (m < 1) throw DimensionError("game needs at least one player");
  if (box_.lower.size() != m || box_.upper.size() != m) {
    throw DimensionError("box dimension does not match player count");
  }
  for (int k = 0; k < m; ++k) {
    if (!std::isfinite(box_.lower[k]) || !std::isfinite(box_.upper[k]) ||
        !(box_.lower[k] < box_.upper[k])) {
      std::ostringstream os;
      os << "box bound " << k + 1 << " must satisfy lo < hi";
      throw DimensionError(os.str());
    }
  }
  for (int i = 0; i < m; ++i) {
    PlayerLoss& loss = losses_[i];
    if (loss.pieces.empty() && loss.quad.size() == 0 && loss.linear.size() == 0) {
      std::ostringstream os;
      os << "player " << i + 1 << " has no affine pieces, quadratic or linear term";
      throw DimensionError(os.str());
    }
    if (loss.quad.size() == 0) loss.quad = Matrix::Zero(m, m);
    if (loss.linear.size() == 0) loss.linear = Vector::Zero(m);
    if (loss.quad.rows() != m || loss.quad.cols() != m) {
      std::ostringstream os;
      os << "player " << i + 1 << ": quad must be " << m << "x" << m;
      throw DimensionError(os.str());
    }
    if (loss.linear.size() != m) {
      std::ostringstream os;
      os << "player " << i + 1 << ": linear must have " << m << " entries";
      throw DimensionError(os.str());
    }
    for (std::size_t j = 0; j < loss.pieces.size(); ++j) {
      if (loss.pieces[j].a.size() != m) {
        std::ostringstream os;
        os << "player " << i + 1 << ": affine piece " << j + 1 << " must have "
           << m << " coefficients";
        throw DimensionError(os.str());
      }
      if (!loss.pieces[j].a.allFinite() || !std::isfinite(loss.pieces[j].b)) {
        throw DimensionError("non-finite affine piece coefficient");
      }
    }
    if (!loss.quad.allFinite() || !loss.linear.allFinite() ||
        !std::isfinite(loss.constant)) {
      throw DimensionError("non-finite loss coefficient");
    }
    const double scale = 1.0 + loss.quad.cwiseAbs().maxCoeff();
    if ((loss.quad - loss.quad.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      std::ostringstream os;
      os << "player " << i + 1 << ": quad is not symmetric";
      throw DimensionError(os.str());
    }
    if (loss.quad(i, i) < 0.0) {
      std::ostringstream os;
      os << "player " << i + 1 << " loss is not convex in coordinate " << i + 1
         << " (quad[" << i + 1 << "][" << i + 1 << "] = " << loss.quad(i, i)
         << " < 0)";
      throw ConvexityError(os.str(), i, i);
    }
  }
  lipschitz_.reserve(m);
  for (const auto& loss : losses_) {
    lipschitz_.push_back(std::max(estimate_lipschitz(loss, box_), 1e-300));
  }
}

const PlayerLoss& Game::loss(int i) const {
  if (i < 0 || i >= players()) {
    std::ostringstream os;
    os << "player index " << i << " out of range [0, " << players() << ")";
    throw IndexError(os.str());
  }
  return losses_[i];
}

double Game::lipschitz(int i) const {
  loss(i);
  return lipschitz_[i];
}

double Game::max_lipschitz() const {
  return *std::max_element(lipschitz_.begin(), lipschitz_.end());
}

double estimate_lipschitz(const PlayerLoss& loss, const Box& box) {
  double piece = 0.0;
  for (const auto& p : loss.pieces) piece = std::max(piece, p.a.norm());
  double quad_norm = 0.0;
  if (loss.quad.size() > 0) {
    quad_norm = Eigen::JacobiSVD<Matrix>(loss.quad).singularValues()(0);
  }
  const double lin = loss.linear.size() > 0 ? loss.linear.norm() : 0.0;
  return piece + quad_norm * box.radius() + lin;
}

double evaluate(const Game& game, int i, const Point& x) {
  const PlayerLoss& loss = game.loss(i);
  check_point(game, x);
  count_oracle_calls(1);
  double v = loss.pieces.empty() ? 0.0 : max_piece_value(loss, x);
  v += 0.5 * x.dot(loss.quad * x) + loss.linear.dot(x) + loss.constant;
  return v;
}

SubgradientInterval subgradient_interval(const Game& game, int i,
                                         const Point& x, double tie_tol) {
  const PlayerLoss& loss = game.loss(i);
  check_point(game, x);
  count_oracle_calls(1);
  const double smooth = loss.quad.row(i).dot(x) + loss.linear[i];
  if (loss.pieces.empty()) return {smooth, smooth};

  const double top = max_piece_value(loss, x);
  const double tol = tie_tol * (1.0 + std::abs(top));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : loss.pieces) {
    if (p.a.dot(x) + p.b >= top - tol) {
      lo = std::min(lo, p.a[i]);
      hi = std::max(hi, p.a[i]);
    }
  }
  return {lo + smooth, hi + smooth};
}

Vector residual_theta(const Game& game, const Point& x,
                      std::vector<int>* nonsmooth) {
  const int m = game.players();
  check_point(game, x);
  Vector theta(m);
  for (int i = 0; i < m; ++i) {
    const SubgradientInterval g = subgradient_interval(game, i, x);
    theta[i] = g.midpoint();
    if (!g.degenerate() && nonsmooth != nullptr) nonsmooth->push_back(i);
  }
  return theta;
}

LineRestriction::LineRestriction(const PlayerLoss& loss, const Point& z,
                                 int axis) {
  slopes_.reserve(loss.pieces.size());
  offsets_.reserve(loss.pieces.size());
  for (const auto& p : loss.pieces) {
    slopes_.push_back(p.a[axis]);
    offsets_.push_back(p.a.dot(z) + p.b);
  }
  curvature_ = loss.quad(axis, axis);
  drift_ = loss.quad.row(axis).dot(z) + loss.linear[axis];
  base_ = 0.5 * z.dot(loss.quad * z) + loss.linear.dot(z) + loss.constant;
}

double LineRestriction::value(double u) const {
  count_oracle_calls(1);
  double v = base_ + u * (drift_ + 0.5 * curvature_ * u);
  if (!slopes_.empty()) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < slopes_.size(); ++j) {
      best = std::max(best, slopes_[j] * u + offsets_[j]);
    }
    v += best;
  }
  return v;
}

std::vector<double> LineRestriction::crossings(double a, double b) const {
  std::vector<double> out;
  const std::size_t n = slopes_.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double ds = slopes_[j] - slopes_[k];
      if (ds == 0.0) continue;
      const double t = (offsets_[k] - offsets_[j]) / ds;
      if (t > a && t < b) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double LineRestriction::integrate_linear_weight(double a, double b, double w_a,
                                                double w_b) const {
  if (!(b > a)) return 0.0;
  std::vector<double> knots{a};
  for (double t : crossings(a, b)) knots.push_back(t);
  knots.push_back(b);
  const double slope_w = (w_b - w_a) / (b - a);
  double total = 0.0;
  // Simpson's rule is exact for the cubic g·w on each sub-interval.
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double lo = knots[k];
    const double hi = knots[k + 1];
    const double mid = 0.5 * (lo + hi);
    const auto w = [&](double u) { return w_a + slope_w * (u - a); };
    total += (hi - lo) / 6.0 *
             (value(lo) * w(lo) + 4.0 * value(mid) * w(mid) + value(hi) * w(hi));
  }
  return total;
}

}  // namespace nash
