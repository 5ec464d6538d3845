#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altgd {

/// Thrown when a caller violates an operation's preconditions
/// (dimension mismatches, wrong stage tags, non-finite inputs).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when a rollout component exceeds the divergence guard.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Thrown when an iterative routine fails to converge; carries the
/// last estimate so callers can decide whether it is usable anyway.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double last_estimate, const std::string& what)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Config-file parse failure; carries the 1-based offending line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace altgd
