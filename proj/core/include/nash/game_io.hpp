#pragma once

#include <string>

#include "nash/game.hpp"

namespace nash {

/// Parses the JSON game format:
///
///   {"m": 2,
///    "box": [[-100, 100], [-100, 100]],
///    "players": [{"affine_pieces": [{"a": [2, 1], "b": 0}],
///                 "quad": [[0, 0], [0, 0]],
///                 "linear": [0, 0],
///                 "constant": 0}, ...]}
///
/// Omitted fields default to empty/zero; "box" defaults to [-100, 100]^m.
/// Unknown keys are rejected. Throws ParseError (with line/column for syntax
/// errors), DimensionError or ConvexityError.
Game parse_game_spec(const std::string& text, const std::string& name = {});

/// Serializes a game in the same format (pretty-printed JSON).
std::string game_to_json(const Game& game);

/// "builtin:NAME" or a path to a game file.
Game load_game(const std::string& source);

}  // namespace nash
