#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twbb {

/// A caller broke an operation's precondition (inactive vertex, missing edge,
/// non-permutation order, oversized oracle input, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed graph or decomposition text. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace twbb
