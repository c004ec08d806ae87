#pragma once

#include <stdexcept>
#include <string>

namespace hdrc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (e.g. r > min(m,n)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a structural contract (vector lengths, ordering).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Variant or run configuration not applicable to the antenna configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Solver declined the instance because it is too large for the method.
class SolverRefusal : public Error {
 public:
  using Error::Error;
};

// Not enough reliable Monte Carlo points to fit a slope.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Non-finite or otherwise malformed numeric input.
class InputError : public Error {
 public:
  using Error::Error;
};

// A state the mathematics says cannot happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdrc
