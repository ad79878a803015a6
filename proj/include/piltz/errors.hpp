#pragma once

#include <stdexcept>
#include <string>

namespace piltz {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width accumulator would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's (or an envelope's) validity range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested block exceeds the configured memory budget.
class SizingError : public Error {
 public:
  using Error::Error;
};

// Target radius not reachable at the configured working precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  enum class Kind { ConfigHashMismatch, SeedMismatch, Corrupt, Io };

  CheckpointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// The jump-point argument needs x*P_k(log x) increasing; raised when that fails.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

}  // namespace piltz
