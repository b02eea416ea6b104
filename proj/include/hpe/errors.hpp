#pragma once

#include <stdexcept>

namespace hpe {

/// Caller broke a contract: dimension mismatch, wrong operator kind, bad argument.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or infeasible solver/oracle parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation requested on an operator composition for which no closed form exists.
class UnsupportedOperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle produced a certificate that fails the relative-error step test.
class StepViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite iterate or other floating-point breakdown.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hpe
