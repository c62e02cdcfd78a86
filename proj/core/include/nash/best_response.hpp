#pragma once

#include "nash/game.hpp"

namespace nash {

/// Brute-force argmin of t ↦ f_i(x with x_i = t) over [lo_i, hi_i]: a grid of
/// grid_n points followed by one golden-section pass around the best grid
/// point. Accuracy ≤ (hi_i − lo_i)/grid_n. Independent of the loss structure;
/// used as a test oracle and as a cross-check in certificates.
double best_response_oracle(const Game& game, int i, const Point& x, int grid_n);

/// Exact minimizer of the same one-dimensional problem, using the loss
/// structure: along a coordinate line the loss is a max of lines plus a convex
/// quadratic, so the argmin is a box end, a crossing of two pieces, or a
/// stationary point of one piece. Ties prefer the candidate closest to x_i.
double exact_best_response(const Game& game, int i, const Point& x);

}  // namespace nash
