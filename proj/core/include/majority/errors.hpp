#pragma once

#include <stdexcept>
#include <string>

namespace majority {

// Invalid argument values: bad family parameters, malformed edge lists
// handed to the Graph constructor, out-of-range biases, and so on.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A text input could not be parsed.  The message names the offending line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// The graph violates a structural precondition of the requested operation
// (disconnected, has an isolated vertex, is not a cycle, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance exceeds a hard size cap of an exact method.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized construction exhausted its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistical audit of a claimed property failed (walk drift, step bound).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trajectory hit its step cap without reaching a stable coloring.
class NonStabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace majority
