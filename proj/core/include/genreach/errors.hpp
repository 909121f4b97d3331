#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genreach {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (game file, QDIMACS, strategy JSON).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A game or strategy that violates a structural invariant.
class InvalidGame : public Error {
 public:
  using Error::Error;
};

// Bitmask-based method refused because k exceeds the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A solver was called on an instance outside its class
// (not singleton, not one-player, bad family parameter, ...).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// A strategy has no prescribed move on a configuration that was reached.
class StrategyPartial : public Error {
 public:
  using Error::Error;
};

// A search ran past its node or enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A condition that can only fail if the library itself is wrong.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace genreach
