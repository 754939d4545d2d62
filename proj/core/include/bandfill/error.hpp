#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace bandfill {

/// Coarse error classes. The CLI maps each one to a stable exit code.
enum class ErrorCategory {
  parse,      // malformed text input (CSV, index sets, JSON)
  parameter,  // value outside its domain (omega, rho, horizon, ...)
  geometry,   // index sets and windows that do not fit together
  numeric,    // non-finite data, failed factorizations
  solver,     // iteration did not converge, bound unavailable
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCategory::parse, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(ErrorCategory::geometry, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

/// Thrown when a fixed-point iteration exhausts its budget. Carries the last
/// iterate so callers can still inspect how far it got.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, double residual,
                   int iterations)
      : SolverError(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::VectorXd last_iterate_;
  double residual_;
  int iterations_;
};

}  // namespace bandfill
