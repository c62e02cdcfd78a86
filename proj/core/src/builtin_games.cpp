#include "nash/builtin_games.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "nash/errors.hpp"

namespace nash {

namespace {

constexpr double kBoxHalfWidth = 100.0;
constexpr int kDefaultQuadM = 5;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// ½ xᵀQx + c·x + k for (u·x + v)², u = (u1, u2).
PlayerLoss squared_affine(double u1, double u2, double v = 0.0) {
  PlayerLoss loss;
  const Vector u = vec2(u1, u2);
  loss.quad = 2.0 * u * u.transpose();
  loss.linear = 2.0 * v * u;
  loss.constant = v * v;
  return loss;
}

PlayerLoss max_of(std::vector<AffinePiece> pieces) {
  PlayerLoss loss;
  loss.pieces = std::move(pieces);
  return loss;
}

Game two_player(std::string name, PlayerLoss f1, PlayerLoss f2) {
  return Game({std::move(f1), std::move(f2)},
              Box::uniform(2, -kBoxHalfWidth, kBoxHalfWidth), std::move(name));
}

struct QuadSpec {
  int m = kDefaultQuadM;
  bool separable = false;
};

std::optional<QuadSpec> parse_quad_name(const std::string& name) {
  QuadSpec spec;
  std::string rest;
  if (name.rfind("quad-m-sep", 0) == 0) {
    spec.separable = true;
    rest = name.substr(10);
  } else if (name.rfind("quad-m", 0) == 0) {
    rest = name.substr(6);
  } else {
    return std::nullopt;
  }
  if (rest.empty()) return spec;
  if (rest[0] != ':' || rest.size() == 1) return std::nullopt;
  try {
    std::size_t used = 0;
    spec.m = std::stoi(rest.substr(1), &used);
    if (used != rest.size() - 1 || spec.m < 1) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return spec;
}

double coupling(int m, int i, int j) {
  if (m < 2) return 0.0;
  const double scale = std::min(0.3, 1.0 / (m - 1));
  // Dyadic so that the gradient at the equilibrium evaluates to exactly 0.
  return std::round(64.0 * scale * std::sin(1.0 + i + 2.0 * j)) / 64.0;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"cycle2", "diverge2", "dm-maxfun", "stall2", "abs-contract", "quad-m"};
}

Point quad_m_equilibrium(int m) {
  Point x(m);
  for (int i = 0; i < m; ++i) x[i] = std::round(16.0 * std::sin(i + 1.0)) / 32.0;
  return x;
}

Game make_quad_m(int m, bool separable) {
  if (m < 1) throw DimensionError("quad-m needs m >= 1");
  const Point star = quad_m_equilibrium(m);
  std::vector<PlayerLoss> losses;
  losses.reserve(m);
  for (int i = 0; i < m; ++i) {
    PlayerLoss loss;
    loss.quad = Matrix::Zero(m, m);
    loss.linear = Vector::Zero(m);
    loss.quad(i, i) = 2.0;
    double cross = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double c = separable ? 0.0 : coupling(m, i, j);
      loss.quad(i, j) = c;
      loss.quad(j, i) = c;
      loss.linear[j] = -c * star[i];
      cross += c * star[j];
    }
    loss.linear[i] = -2.0 * star[i] - cross;
    loss.constant = star[i] * star[i] + star[i] * cross;
    losses.push_back(std::move(loss));
  }
  std::string name = separable ? "quad-m-sep:" : "quad-m:";
  name += std::to_string(m);
  return Game(std::move(losses), Box::uniform(m, -kBoxHalfWidth, kBoxHalfWidth),
              std::move(name));
}

Game builtin(const std::string& name) {
  if (name == "cycle2") {
    // Best-response lines x2 = x1 and x2 = −x1.
    return two_player(name, squared_affine(1.0, -1.0), squared_affine(1.0, 1.0));
  }
  if (name == "diverge2") {
    // Best-response lines x2 = x1/3 and x2 = x1/2.
    return two_player(name, squared_affine(1.0, -3.0), squared_affine(-0.5, 1.0));
  }
  if (name == "dm-maxfun") {
    auto f = max_of({{vec2(2.0, 1.0), 0.0}, {vec2(-1.0, 1.0), -3.0}});
    return two_player(name, f, f);
  }
  if (name == "stall2") {
    auto f = max_of({{vec2(2.0, 1.0), 0.0}, {vec2(-1.0, -1.0), 0.0}});
    return two_player(name, f, f);
  }
  if (name == "abs-contract") {
    return two_player(name,
                      max_of({{vec2(1.0, -0.5), 0.0}, {vec2(-1.0, 0.5), 0.0}}),
                      max_of({{vec2(0.5, 1.0), 0.0}, {vec2(-0.5, -1.0), 0.0}}));
  }
  if (auto spec = parse_quad_name(name)) return make_quad_m(spec->m, spec->separable);
  throw UnknownGameError("unknown builtin game '" + name + "'");
}

std::vector<Point> known_equilibria(const std::string& name) {
  if (name == "cycle2" || name == "diverge2" || name == "abs-contract" ||
      name == "stall2") {
    // stall2 has a whole line 3x1 + 2x2 = 0 of equilibria; the origin is one.
    return {Point::Zero(2)};
  }
  if (auto spec = parse_quad_name(name)) return {quad_m_equilibrium(spec->m)};
  return {};
}

std::optional<double> distance_to_known_equilibrium(const std::string& name,
                                                    const Point& x) {
  if (name == "stall2" && x.size() == 2) {
    return std::abs(3.0 * x[0] + 2.0 * x[1]) / std::sqrt(13.0);
  }
  const auto eqs = known_equilibria(name);
  std::optional<double> best;
  for (const auto& e : eqs) {
    if (e.size() != x.size()) continue;
    const double d = (x - e).norm();
    if (!best || d < *best) best = d;
  }
  return best;
}

}  // namespace nash
