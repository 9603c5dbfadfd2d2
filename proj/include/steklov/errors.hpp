#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Argument outside the mathematical domain of an operation (negative t, bad parity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or incomplete scenario / mesh / solver configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured budget (mode count, oracle size, ...) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coefficients, SPD violations, failed factorizations.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace steklov
