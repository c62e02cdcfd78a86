#include <cmath>
#include <random>

#include "doctest.h"
#include "nash/best_response.hpp"
#include "nash/builtin_games.hpp"
#include "nash/errors.hpp"
#include "nash/game_io.hpp"
#include "test_support.hpp"

using namespace nash;
using nash::test::pt;

namespace {

const char* kTwoPlayerQuadratic = R"({
  "m": 2,
  "players": [
    {"quad": [[2, 0], [0, 0]], "linear": [-2, 0], "constant": 1},
    {"quad": [[0, 0], [0, 2]]}
  ]
})";

}  // namespace

TEST_CASE("evaluate on builtin games") {
  const Game dm = builtin("dm-maxfun");
  CHECK(evaluate(dm, 0, pt({0, 0})) == 0.0);
  CHECK(evaluate(dm, 0, pt({-0.5, 0.5})) == -0.5);
  CHECK(evaluate(dm, 1, pt({-0.5, 0.5})) == -0.5);
  CHECK(evaluate(builtin("diverge2"), 0, pt({3, 1})) == 0.0);
  CHECK(evaluate(builtin("cycle2"), 1, pt({1, 2})) == doctest::Approx(9.0));
  CHECK(evaluate(builtin("abs-contract"), 1, pt({2, -3})) == doctest::Approx(2.0));
}

TEST_CASE("evaluate validates inputs") {
  const Game g = builtin("cycle2");
  CHECK_THROWS_AS(evaluate(g, 0, pt({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(evaluate(g, 2, pt({1, 2})), IndexError);
  CHECK_THROWS_AS(evaluate(g, -1, pt({1, 2})), IndexError);
}

TEST_CASE("subgradient intervals") {
  const auto stall = subgradient_interval(builtin("stall2"), 0, pt({0, 0}));
  CHECK(stall.lo == -1.0);
  CHECK(stall.hi == 2.0);
  CHECK(stall.distance_to_zero() == 0.0);
  const auto stall2 = subgradient_interval(builtin("stall2"), 1, pt({0, 0}));
  CHECK(stall2.lo == -1.0);
  CHECK(stall2.hi == 1.0);

  const auto div = subgradient_interval(builtin("diverge2"), 0, pt({1, 1}));
  CHECK(div.lo == doctest::Approx(-4.0));
  CHECK(div.degenerate());

  // Own-coordinate minimizer of a smooth quadratic.
  const auto flat = subgradient_interval(builtin("diverge2"), 0, pt({3, 1}));
  CHECK(flat.lo == doctest::Approx(0.0));
  CHECK(flat.hi == doctest::Approx(0.0));
}

TEST_CASE("residual_theta") {
  const Game div = builtin("diverge2");
  const Vector r = residual_theta(div, pt({1, 1}));
  CHECK(r[0] == doctest::Approx(-4.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(residual_theta(div, pt({0, 0})).norm() == 0.0);
  const Vector c = residual_theta(builtin("cycle2"), pt({1, 1}));
  CHECK(c[0] == doctest::Approx(0.0));
  CHECK(c[1] == doctest::Approx(4.0));

  std::vector<int> flagged;
  const Vector s = residual_theta(builtin("stall2"), pt({0, 0}), &flagged);
  CHECK(flagged == std::vector<int>{0, 1});
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == doctest::Approx(0.0));
}

TEST_CASE("game file parsing") {
  const Game g = parse_game_spec(kTwoPlayerQuadratic, "q");
  CHECK(g.players() == 2);
  CHECK(g.box().lower[0] == -100.0);
  CHECK(evaluate(g, 0, pt({1, 5})) == doctest::Approx(0.0));

  SUBCASE("round trip") {
    const Game back = parse_game_spec(game_to_json(g));
    CHECK(evaluate(back, 0, pt({0.3, -2})) == evaluate(g, 0, pt({0.3, -2})));
    CHECK(evaluate(back, 1, pt({0.3, -2})) == evaluate(g, 1, pt({0.3, -2})));
  }
  SUBCASE("negative own curvature") {
    const char* bad = R"({"m": 2, "players": [{"quad": [[-1, 0], [0, 0]]}, {"linear": [0, 1]}]})";
    try {
      parse_game_spec(bad);
      FAIL("expected ConvexityError");
    } catch (const ConvexityError& e) {
      CHECK(e.player() == 0);
      CHECK(e.coordinate() == 0);
    }
  }
  SUBCASE("dm-maxfun spec") {
    const char* dm = R"({"m": 2, "players": [
      {"affine_pieces": [{"a": [2, 1], "b": 0}, {"a": [-1, 1], "b": -3}]},
      {"affine_pieces": [{"a": [2, 1], "b": 0}, {"a": [-1, 1], "b": -3}]}]})";
    CHECK(evaluate(parse_game_spec(dm), 0, pt({0, 0})) == 0.0);
  }
  SUBCASE("syntax error position") {
    try {
      parse_game_spec("{\n  \"m\": 2,\n  \"players\": [ }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 0);
    }
  }
  SUBCASE("unknown key") {
    CHECK_THROWS_AS(parse_game_spec(R"({"m": 1, "players": [{"linear": [1]}], "extra": 0})"),
                    ParseError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(parse_game_spec(R"({"m": 2, "players": [{"linear": [1]}, {"linear": [0, 1]}]})"),
                    DimensionError);
  }
}

TEST_CASE("builtin catalogue") {
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    CHECK(g.players() >= 2);
    for (int i = 0; i < g.players(); ++i) CHECK(g.lipschitz(i) > 0.0);
  }
  CHECK_THROWS_AS(builtin("nope"), UnknownGameError);
  CHECK(builtin("quad-m:3").players() == 3);
  for (const auto& name : {"cycle2", "diverge2", "abs-contract", "stall2"}) {
    for (const auto& x : known_equilibria(name)) {
      CHECK(distance_to_known_equilibrium(name, x).value() == 0.0);
    }
  }
  CHECK(*distance_to_known_equilibrium("stall2", pt({-2, 3})) == doctest::Approx(0.0));
  CHECK_FALSE(distance_to_known_equilibrium("dm-maxfun", pt({0, 0})).has_value());
}

TEST_CASE("builtin best-response loci") {
  // cycle2: player 1 responds on x1 = x2, player 2 on x2 = -x1.
  CHECK(exact_best_response(builtin("cycle2"), 0, pt({0, 0.7})) == doctest::Approx(0.7));
  CHECK(exact_best_response(builtin("cycle2"), 1, pt({0.7, 0})) == doctest::Approx(-0.7));
  // diverge2: x2 = x1/3 and x2 = x1/2.
  CHECK(exact_best_response(builtin("diverge2"), 0, pt({0, 1})) == doctest::Approx(3.0));
  CHECK(exact_best_response(builtin("diverge2"), 1, pt({2, 0})) == doctest::Approx(1.0));
  // abs-contract: x1 = x2/2, x2 = -x1/2.
  CHECK(exact_best_response(builtin("abs-contract"), 0, pt({5, 2})) == doctest::Approx(1.0));
  CHECK(exact_best_response(builtin("abs-contract"), 1, pt({2, 5})) == doctest::Approx(-1.0));
}

TEST_CASE("best_response_oracle") {
  std::vector<PlayerLoss> losses = builtin("diverge2").losses();
  const Game small(losses, Box::uniform(2, -10, 10));
  CHECK(best_response_oracle(small, 0, pt({0, 1}), 10001) == doctest::Approx(3.0).epsilon(2e-3));
  CHECK(best_response_oracle(builtin("cycle2"), 1, pt({1, 0}), 2001) ==
        doctest::Approx(-1.0).epsilon(1e-1));
  CHECK(std::abs(best_response_oracle(builtin("abs-contract"), 0, pt({0, 2}), 2001) - 1.0) <=
        200.0 / 2001);
  CHECK_THROWS(best_response_oracle(builtin("cycle2"), 0, pt({0, 0}), 2));
}

TEST_CASE("property: convexity in own coordinate") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    for (int trial = 0; trial < 200; ++trial) {
      const int i = trial % m;
      Point x = test::random_point(rng, m, -50, 50);
      const double t1 = 100 * unit(rng) - 50;
      const double t2 = 100 * unit(rng) - 50;
      const double a = unit(rng);
      auto at = [&](double t) {
        Point y = x;
        y[i] = t;
        return evaluate(g, i, y);
      };
      const double lhs = at(a * t1 + (1 - a) * t2);
      const double rhs = a * at(t1) + (1 - a) * at(t2);
      CHECK(lhs <= rhs + 1e-12 * (1 + std::abs(rhs)));
    }
  }
}

TEST_CASE("property: subgradient support inequality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> step(-3.0, 3.0);
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    for (int trial = 0; trial < 200; ++trial) {
      const int i = trial % m;
      const Point x = test::random_point(rng, m, -10, 10);
      const auto iv = subgradient_interval(g, i, x);
      CHECK(iv.lo <= iv.hi);
      const double a = step(rng);
      Point y = x;
      y[i] += a;
      const double diff = evaluate(g, i, y) - evaluate(g, i, x);
      const double scale = 1e-10 * (1 + std::abs(diff));
      CHECK(diff >= a * iv.lo - scale);
      CHECK(diff >= a * iv.hi - scale);
    }
  }
}

TEST_CASE("property: central differences match theta where smooth") {
  std::mt19937_64 rng(13);
  const double h = 1e-5;
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    for (int trial = 0; trial < 100; ++trial) {
      const int i = trial % m;
      const Point x = test::random_point(rng, m, -10, 10);
      Point lo = x, hi = x;
      lo[i] -= h;
      hi[i] += h;
      if (!subgradient_interval(g, i, x).degenerate()) continue;
      const double fd = (evaluate(g, i, hi) - evaluate(g, i, lo)) / (2 * h);
      const bool kink_between =
          subgradient_interval(g, i, lo).hi < subgradient_interval(g, i, x).lo - 1e-9 ||
          subgradient_interval(g, i, hi).lo > subgradient_interval(g, i, x).hi + 1e-9;
      if (kink_between) continue;
      CHECK(fd == doctest::Approx(residual_theta(g, x)[i]).epsilon(1e-6).scale(10));
    }
  }
}

TEST_CASE("property: Lipschitz bound over the box") {
  std::mt19937_64 rng(17);
  for (const auto& name : builtin_names()) {
    const Game g = builtin(name);
    const int m = g.players();
    for (int trial = 0; trial < 200; ++trial) {
      const int i = trial % m;
      const Point x = test::random_point(rng, m, -100, 100);
      const Point y = test::random_point(rng, m, -100, 100);
      CHECK(std::abs(evaluate(g, i, x) - evaluate(g, i, y)) <=
            g.lipschitz(i) * (x - y).norm() * (1 + 1e-12));
    }
  }
}

TEST_CASE("property: subdifferential is upper semicontinuous along sequences") {
  // y_k -> y with interval endpoints converging: limits stay inside the interval at y.
  const Game g = builtin("stall2");
  const Point y = pt({0, 0});
  const auto at_y = subgradient_interval(g, 0, y);
  for (const Point dir : {pt({1, 0}), pt({-1, 0}), pt({0.3, -1}), pt({-2, 3})}) {
    double last_lo = 0, last_hi = 0;
    for (int k = 1; k <= 40; ++k) {
      const auto iv = subgradient_interval(g, 0, y + std::ldexp(1.0, -k) * dir);
      last_lo = iv.lo;
      last_hi = iv.hi;
    }
    CHECK(at_y.contains(last_lo, 1e-12));
    CHECK(at_y.contains(last_hi, 1e-12));
  }
}

TEST_CASE("line restriction integrates exactly") {
  const Game g = builtin("stall2");
  const LineRestriction line(g.loss(0), pt({0.2, -0.1}), 0);
  // ∫_{-1/2}^{1/2} max(0.3 + 2u, -0.1 - u) du, kink at u = -2/15.
  const double exact = 301.0 / 600.0;
  CHECK(line.integrate_linear_weight(-0.5, 0.5, 1.0, 1.0) == doctest::Approx(exact).epsilon(1e-14));
  const auto cuts = line.crossings(-0.5, 0.5);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0] == doctest::Approx(-2.0 / 15.0));
}
