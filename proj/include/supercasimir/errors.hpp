#pragma once

#include <stdexcept>
#include <string>

namespace supercasimir {

// Input outside the mathematical domain of an operation (negative temperature,
// non-positive frequency, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical engine ran out of budget before meeting its tolerance. Carries
// the best estimate reached so callers can decide whether it is usable.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

// Malformed or invalid configuration (material database, scenario file, CLI).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace supercasimir
