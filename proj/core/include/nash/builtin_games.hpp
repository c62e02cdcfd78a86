#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nash/game.hpp"

namespace nash {

/// Names accepted by builtin(): cycle2, diverge2, dm-maxfun, stall2,
/// abs-contract, quad-m. The quadratic family also accepts "quad-m:M" and the
/// separable variant "quad-m-sep" / "quad-m-sep:M".
std::vector<std::string> builtin_names();

/// Throws UnknownGameError for names outside builtin_names() and the
/// parameterized quad-m forms.
Game builtin(const std::string& name);

/// Known Nash equilibria of a builtin (empty when none is known or none exists
/// in the interior, e.g. dm-maxfun).
std::vector<Point> known_equilibria(const std::string& name);

/// Distance from x to the nearest known equilibrium of a builtin; nullopt when
/// the game has none on record. stall2 uses its full equilibrium line.
std::optional<double> distance_to_known_equilibrium(const std::string& name,
                                                    const Point& x);

/// m-player game with losses (x_i − x*_i)² + (x_i − x*_i)·Σ_{j≠i} c_ij (x_j − x*_j).
/// The coupling c_ij is zero when `separable`. The unique equilibrium is x*.
Game make_quad_m(int m, bool separable = false);
Point quad_m_equilibrium(int m);

}  // namespace nash
