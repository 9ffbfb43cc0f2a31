#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaussforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised when a point handed to the Gauss map is off the hypersurface or singular.
class PointError : public Error {
 public:
  enum class Kind { NotOnVariety, Singular };

  PointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(double estimated, double budget)
      : Error("work budget exceeded: estimated " + std::to_string(static_cast<long long>(estimated)) +
              " polynomial evaluations, budget " + std::to_string(static_cast<long long>(budget))),
        estimated_(estimated) {}

  double estimated() const noexcept { return estimated_; }

 private:
  double estimated_;
};

}  // namespace gaussforge
