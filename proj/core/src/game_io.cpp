#include "nash/game_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nash/builtin_games.hpp"
#include "nash/errors.hpp"

namespace nash {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what, 0, 0);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

Vector vector_of(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] =
        number(v[k], where + "[" + std::to_string(k) + "]");
  }
  return out;
}

Matrix matrix_of(const json& v, const std::string& where, int m) {
  if (!v.is_array() || static_cast<int>(v.size()) != m) {
    throw DimensionError(where + ": expected " + std::to_string(m) + " rows");
  }
  Matrix out(m, m);
  for (int r = 0; r < m; ++r) {
    const Vector row = vector_of(v[r], where + "[" + std::to_string(r) + "]");
    if (row.size() != m) {
      throw DimensionError(where + "[" + std::to_string(r) + "]: expected " +
                           std::to_string(m) + " entries");
    }
    out.row(r) = row.transpose();
  }
  return out;
}

// 1-based line/column of a byte offset.
std::pair<std::size_t, std::size_t> locate(const std::string& text,
                                           std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Game parse_game_spec(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": "
       << e.what();
    throw ParseError(os.str(), line, col);
  }
  reject_unknown_keys(doc, {"m", "box", "players"}, "game");
  if (!doc.contains("m") || !doc["m"].is_number_integer()) {
    fail("game", "'m' must be an integer");
  }
  const int m = doc["m"].get<int>();
  if (m < 1) throw DimensionError("game: 'm' must be >= 1");

  Box box = Box::uniform(m, -100.0, 100.0);
  if (doc.contains("box")) {
    const json& b = doc["box"];
    if (!b.is_array() || static_cast<int>(b.size()) != m) {
      throw DimensionError("box: expected " + std::to_string(m) + " [lo, hi] pairs");
    }
    for (int k = 0; k < m; ++k) {
      const Vector pair = vector_of(b[k], "box[" + std::to_string(k) + "]");
      if (pair.size() != 2) fail("box[" + std::to_string(k) + "]", "expected [lo, hi]");
      box.lower[k] = pair[0];
      box.upper[k] = pair[1];
    }
  }

  if (!doc.contains("players") || !doc["players"].is_array()) {
    fail("game", "'players' must be an array");
  }
  const json& players = doc["players"];
  if (static_cast<int>(players.size()) != m) {
    throw DimensionError("players: expected " + std::to_string(m) +
                         " entries, found " + std::to_string(players.size()));
  }

  std::vector<PlayerLoss> losses;
  for (int i = 0; i < m; ++i) {
    const std::string where = "players[" + std::to_string(i) + "]";
    const json& p = players[i];
    reject_unknown_keys(p, {"affine_pieces", "quad", "linear", "constant"}, where);
    PlayerLoss loss;
    if (p.contains("affine_pieces")) {
      const json& pieces = p["affine_pieces"];
      if (!pieces.is_array()) fail(where + ".affine_pieces", "expected an array");
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        const std::string pw = where + ".affine_pieces[" + std::to_string(j) + "]";
        reject_unknown_keys(pieces[j], {"a", "b"}, pw);
        AffinePiece piece;
        if (!pieces[j].contains("a")) fail(pw, "missing 'a'");
        piece.a = vector_of(pieces[j]["a"], pw + ".a");
        if (piece.a.size() != m) {
          throw DimensionError(pw + ".a: expected " + std::to_string(m) + " entries");
        }
        if (pieces[j].contains("b")) piece.b = number(pieces[j]["b"], pw + ".b");
        loss.pieces.push_back(std::move(piece));
      }
    }
    if (p.contains("quad")) loss.quad = matrix_of(p["quad"], where + ".quad", m);
    if (p.contains("linear")) {
      loss.linear = vector_of(p["linear"], where + ".linear");
      if (loss.linear.size() != m) {
        throw DimensionError(where + ".linear: expected " + std::to_string(m) +
                             " entries");
      }
    }
    if (p.contains("constant")) loss.constant = number(p["constant"], where + ".constant");
    losses.push_back(std::move(loss));
  }
  return Game(std::move(losses), std::move(box), name);
}

std::string game_to_json(const Game& game) {
  const int m = game.players();
  json doc;
  doc["m"] = m;
  json box = json::array();
  for (int k = 0; k < m; ++k) box.push_back({game.box().lower[k], game.box().upper[k]});
  doc["box"] = box;
  json players = json::array();
  for (const auto& loss : game.losses()) {
    json p;
    json pieces = json::array();
    for (const auto& piece : loss.pieces) {
      pieces.push_back({{"a", std::vector<double>(piece.a.data(), piece.a.data() + m)},
                        {"b", piece.b}});
    }
    p["affine_pieces"] = pieces;
    json quad = json::array();
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(m);
      for (int c = 0; c < m; ++c) row[c] = loss.quad(r, c);
      quad.push_back(row);
    }
    p["quad"] = quad;
    p["linear"] = std::vector<double>(loss.linear.data(), loss.linear.data() + m);
    p["constant"] = loss.constant;
    players.push_back(p);
  }
  doc["players"] = players;
  return doc.dump(2);
}

Game load_game(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw ParseError("cannot open game file '" + source + "'", 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_spec(buf.str(), source);
}

}  // namespace nash
