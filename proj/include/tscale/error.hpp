#pragma once

#include <stdexcept>
#include <string>

namespace tscale {

enum class ErrorKind {
  InvalidArgument,   // malformed input or violated precondition
  StandingAssumption,  // a = rho(b), 1 + h*mu = 0, ...
  NotAnEigenvalue,
  InvariantBreach,   // internal consistency check failed
  Io,
};

/// Single exception type thrown by the library; `kind()` says which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tscale
