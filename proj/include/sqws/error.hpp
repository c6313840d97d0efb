#pragma once

#include <stdexcept>
#include <string>

namespace sqws {

// Every failure raised by the library derives from sqws::Error so callers
// can catch at one boundary and still dispatch on the concrete type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid family parameters, rates or grid values.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Unknown role tag or selector that does not resolve to a vertex.
class SelectorError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

// Spectral quantity vanished where a normalization needs it (edgeless graph).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised by the integrator when a guard (trace, hermiticity, positivity,
// step-halving) trips. Carries the simulation time at which it happened.
class NumericalInstabilityError : public Error {
 public:
  NumericalInstabilityError(const std::string& what, double time)
      : Error(what + " at t=" + std::to_string(time) +
              " (try a smaller dt)"),
        time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace sqws
