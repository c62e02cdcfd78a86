#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nash {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed game text. line/column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A player's loss is not convex in the player's own coordinate.
class ConvexityError : public Error {
 public:
  ConvexityError(const std::string& what, int player, int coordinate)
      : Error(what), player_(player), coordinate_(coordinate) {}
  int player() const { return player_; }
  int coordinate() const { return coordinate_; }

 private:
  int player_;
  int coordinate_;
};

class UnknownGameError : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetError : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nash
