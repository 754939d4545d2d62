#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "bandfill/operator.hpp"

namespace bandfill {

enum class SolveMethod { direct, neumann };

std::string_view to_string(SolveMethod method) noexcept;
SolveMethod parse_solve_method(std::string_view text);

struct SolverConfig {
  SolveMethod method = SolveMethod::direct;
  /// Neumann stopping tolerance on the distance to the fixed point.
  double tol = 1e-12;
  int max_iter = 1'000'000;
  /// A solve whose spectral gap 1 + rho - ||A|| falls below this is flagged.
  double condition_warn_threshold = 1e-8;

  void validate() const;
};

struct SolveReport {
  Eigen::VectorXd y;
  /// ||(1 + rho) y - A y - a||
  double residual = 0.0;
  /// 0 for the direct method.
  int iterations = 0;
  /// 1 / (1 + rho - ||A||), the norm of the map a -> y.
  double norm_bound = 0.0;
  double spectral_gap = 0.0;
  bool ill_conditioned = false;
  SolveMethod method = SolveMethod::direct;
  double rho = 0.0;
};

/// Solves ((1 + rho) I - A) y = a by Cholesky factorisation.
/// `spectral_norm` may be passed in when the caller already has it.
SolveReport solve_direct(const GapOperator& op, double rho,
                         std::optional<double> spectral_norm = std::nullopt,
                         double condition_warn_threshold = 1e-8);

/// Neumann partial sums y_{k+1} = (A y_k + a) / (1 + rho), y_0 = a / (1 + rho).
///
/// With q = ||A|| / (1 + rho) the iteration stops once
/// q / (1 - q) * ||y_{k+1} - y_k|| <= tol, which bounds the distance to the
/// exact solution by tol. Throws ConvergenceError after max_iter steps and
/// SolverError when q >= 1.
SolveReport solve_neumann(const GapOperator& op, double rho, const SolverConfig& config,
                          std::optional<double> spectral_norm = std::nullopt);

/// Dispatches on config.method.
SolveReport solve(const GapOperator& op, double rho, const SolverConfig& config,
                  std::optional<double> spectral_norm = std::nullopt);

/// Upper bound eta_norm / (1 + rho - ||A||) on ||y - y_eta|| when the data
/// is perturbed by eta. Throws SolverError if 1 + rho <= ||A||.
double error_bound(const GapOperator& op, double rho, double eta_norm,
                   std::optional<double> spectral_norm = std::nullopt);

}  // namespace bandfill
