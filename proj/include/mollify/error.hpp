#pragma once

#include <stdexcept>
#include <string>

namespace mollify {

/// Inadmissible parameters: violated length bounds or polynomial constraints.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite integrand values or failed order-doubling convergence.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mollify

namespace mollify {

/// Malformed run configuration; the message starts with "source:line:".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mollify
