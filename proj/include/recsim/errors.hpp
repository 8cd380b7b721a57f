#pragma once

#include <stdexcept>
#include <string>

namespace recsim {

// Config/invariant violations (bad JSON, dimension/domain errors named by key).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values produced by a named function or update.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrixError : public NumericError {
 public:
  explicit SingularMatrixError(const std::string& what) : NumericError(what) {}
};

// Iterative solver ran out of iterations; carries the last residual seen.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual(last_residual) {}
  double last_residual;
};

// ODE integration aborted; carries the time at which it failed.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double tau)
      : std::runtime_error(what), tau(tau) {}
  double tau;
};

}  // namespace recsim
