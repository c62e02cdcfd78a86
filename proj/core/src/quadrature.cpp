#include "nash/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nash/errors.hpp"

namespace nash {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

double radical_inverse(std::uint64_t k, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

double ball_volume_fraction(int m) {
  // μ(unit ball) / μ([−1, 1]^m)
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0) /
         std::pow(2.0, m);
}

void check_budget(double count, double cap, int level, int m) {
  if (count > cap) {
    std::ostringstream os;
    os << "quadrature needs " << count << " nodes (level " << level << ", m "
       << m << ") but the cap is " << cap << "; reduce the level or m";
    throw QuadratureBudgetError(os.str());
  }
}

}  // namespace

AveragingSet::AveragingSet(SetKind kind_, double radius_, int m_)
    : kind(kind_), radius(radius_), m(m_) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error("averaging set radius must be positive");
  }
  if (m < 1) throw DimensionError("averaging set dimension must be >= 1");
}

double AveragingSet::diameter() const {
  return kind == SetKind::kBall ? 2.0 * radius : 2.0 * radius * std::sqrt(m);
}

double AveragingSet::measure() const {
  const double cube = std::pow(2.0 * radius, m);
  return kind == SetKind::kCube ? cube : cube * ball_volume_fraction(m);
}

bool AveragingSet::contains(const Vector& y, double slack) const {
  if (y.size() != m) return false;
  const double lim = radius * (1.0 + slack);
  return kind == SetKind::kBall ? y.norm() <= lim : y.cwiseAbs().maxCoeff() <= lim;
}

AveragingSet AveragingSet::scaled(double factor) const {
  return AveragingSet(kind, radius * factor, m);
}

QuadratureRule QuadratureRule::scaled(double factor) const {
  QuadratureRule out = *this;
  out.set = set.scaled(factor);
  for (auto& y : out.nodes) y *= factor;
  for (auto& a : out.axis) a *= factor;
  return out;
}

QuadratureRule make_quadrature(const AveragingSet& set, int level,
                               std::uint64_t seed, double node_cap) {
  if (level < 1) throw Error("quadrature level must be >= 1");
  const int m = set.m;
  const double full = std::pow(static_cast<double>(level), m);
  check_budget(full, node_cap, level, m);

  QuadratureRule rule;
  rule.set = set;
  rule.level = level;
  rule.seed = seed;
  const double r = set.radius;

  if (set.kind == SetKind::kCube) {
    rule.axis.resize(level);
    for (int k = 0; k < level; ++k) {
      rule.axis[k] = -r + (k + 0.5) * (2.0 * r / level);
    }
    const auto count = static_cast<std::size_t>(full);
    rule.nodes.reserve(count);
    std::vector<int> idx(m, 0);
    for (std::size_t n = 0; n < count; ++n) {
      Vector y(m);
      for (int d = 0; d < m; ++d) y[d] = rule.axis[idx[d]];
      rule.nodes.push_back(std::move(y));
      for (int d = 0; d < m; ++d) {
        if (++idx[d] < level) break;
        idx[d] = 0;
      }
    }
    rule.weights.assign(count, 1.0 / static_cast<double>(count));
    return rule;
  }

  if (m > static_cast<int>(std::size(kPrimes))) {
    throw DimensionError("ball quadrature supports at most 25 dimensions");
  }
  const auto target = static_cast<std::size_t>(
      std::max<double>(level, std::ceil(full * ball_volume_fraction(m))));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector shift(m);
  for (int d = 0; d < m; ++d) shift[d] = unif(rng);

  const std::size_t half = target / 2;
  if (target % 2 == 1) rule.nodes.push_back(Vector::Zero(m));
  std::vector<Vector> accepted;
  accepted.reserve(half);
  for (std::uint64_t k = 1; accepted.size() < half; ++k) {
    Vector y(m);
    for (int d = 0; d < m; ++d) {
      double u = radical_inverse(k, kPrimes[d]) + shift[d];
      u -= std::floor(u);
      y[d] = r * (2.0 * u - 1.0);
    }
    if (y.norm() <= r) accepted.push_back(std::move(y));
  }
  for (const auto& y : accepted) {
    rule.nodes.push_back(y);
    rule.nodes.push_back(-y);
  }
  rule.weights.assign(rule.nodes.size(), 1.0 / static_cast<double>(rule.nodes.size()));
  return rule;
}

}  // namespace nash
