#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gaf {

/// %.3g, for error messages.
inline std::string format_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Base for every failure raised by a numerical routine. `operation()` names the
/// routine that gave up so the command-line runner can report it.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

/// A series prefix or a truncation degree hit its hard cap.
class NonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// |J(z,w)|^2 came out larger than one beyond rounding.
class KernelBoundViolated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RootFindingStalled : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ContourThroughZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A linear statistic was requested on a zero set that does not cover the
/// support of the test function.
class SupportExceedsValidity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid arguments: bad family string, malformed grid, unreadable file.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gaf
