#pragma once

#include <stdexcept>
#include <string>

namespace allhops {

/// Malformed input: bad file contents, out-of-range arguments, dimension mismatches.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parse failure carrying the 1-based line number of the offending line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A documented precondition of an algorithm does not hold (e.g. a negative cycle).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A resource budget (memory cap, retry budget) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace allhops
