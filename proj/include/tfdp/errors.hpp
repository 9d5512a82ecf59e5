#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; line() is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that describes nothing usable (e.g. an empty graph).
class InputError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// A repulsion field was paired with a layout of a different generation.
class StaleFieldError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(int iteration, std::size_t node)
      : Error("non-finite position at iteration " + std::to_string(iteration) + ", node " +
              std::to_string(node)),
        iteration_(iteration),
        node_(node) {}
  int iteration() const noexcept { return iteration_; }
  std::size_t node() const noexcept { return node_; }

 private:
  int iteration_;
  std::size_t node_;
};

/// A metric or comparison is not defined for the given input.
class MetricError : public Error {
 public:
  using Error::Error;
};

class DegenerateLayoutError : public MetricError {
 public:
  using MetricError::MetricError;
};

}  // namespace tfdp
