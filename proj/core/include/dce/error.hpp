#pragma once

#include <stdexcept>
#include <string>

namespace dce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scenario or profile violates one of its physical invariants.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// A position or time lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bracketing or refinement of a mode wavenumber failed.
class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, double kLo, double kHi)
      : Error(what), kLo_(kLo), kHi_(kHi) {}

  double kLo() const { return kLo_; }
  double kHi() const { return kHi_; }

 private:
  double kLo_;
  double kHi_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Step-size underflow or a violated integrator contract (symplectic drift).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dce
