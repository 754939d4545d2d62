#include "bandfill/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "bandfill/error.hpp"

namespace bandfill {

std::string_view to_string(SolveMethod method) noexcept {
  return method == SolveMethod::direct ? "direct" : "neumann";
}

SolveMethod parse_solve_method(std::string_view text) {
  if (text == "direct") {
    return SolveMethod::direct;
  }
  if (text == "neumann") {
    return SolveMethod::neumann;
  }
  throw ParseError("unknown solver '" + std::string(text) + "', expected direct or neumann");
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) {
    throw ParameterError("solver tolerance must be positive");
  }
  if (max_iter < 1) {
    throw ParameterError("max_iter must be at least 1");
  }
  if (!(condition_warn_threshold >= 0.0)) {
    throw ParameterError("condition warning threshold must be non-negative");
  }
}

namespace {

void check_inputs(const GapOperator& op, double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw ParameterError("rho must be a finite non-negative number");
  }
  if (op.matrix.rows() == 0) {
    throw GeometryError("empty operator");
  }
  if (!op.matrix.allFinite() || !op.rhs.allFinite()) {
    throw NumericError("operator or right-hand side contains non-finite values");
  }
}

double norm_of(const GapOperator& op, std::optional<double> spectral_norm) {
  return spectral_norm ? *spectral_norm : diagnostics(op).spectral_norm;
}

double residual_of(const GapOperator& op, double rho, const Eigen::VectorXd& y) {
  return ((1.0 + rho) * y - op.matrix * y - op.rhs).norm();
}

}  // namespace

SolveReport solve_direct(const GapOperator& op, double rho, std::optional<double> spectral_norm,
                         double condition_warn_threshold) {
  check_inputs(op, rho);
  const double a_norm = norm_of(op, spectral_norm);

  SolveReport report;
  report.method = SolveMethod::direct;
  report.rho = rho;
  report.spectral_gap = 1.0 + rho - a_norm;
  report.ill_conditioned = report.spectral_gap < condition_warn_threshold;
  report.norm_bound = report.spectral_gap > 0.0 ? 1.0 / report.spectral_gap
                                                : std::numeric_limits<double>::infinity();

  const auto n = op.matrix.rows();
  Eigen::MatrixXd system = (1.0 + rho) * Eigen::MatrixXd::Identity(n, n) - op.matrix;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() == Eigen::Success) {
    report.y = llt.solve(op.rhs);
  } else {
    // Loss of definiteness in floating point; the system is still solvable.
    report.ill_conditioned = true;
    report.y = system.fullPivLu().solve(op.rhs);
  }
  if (!report.y.allFinite()) {
    throw NumericError("direct solve produced non-finite values");
  }
  report.residual = residual_of(op, rho, report.y);
  return report;
}

SolveReport solve_neumann(const GapOperator& op, double rho, const SolverConfig& config,
                          std::optional<double> spectral_norm) {
  check_inputs(op, rho);
  config.validate();
  const double a_norm = norm_of(op, spectral_norm);
  const double q = a_norm / (1.0 + rho);
  if (!(q < 1.0)) {
    std::ostringstream msg;
    msg << "Neumann series needs ||A|| / (1 + rho) < 1, got " << q;
    throw SolverError(msg.str());
  }

  SolveReport report;
  report.method = SolveMethod::neumann;
  report.rho = rho;
  report.spectral_gap = 1.0 + rho - a_norm;
  report.ill_conditioned = report.spectral_gap < config.condition_warn_threshold;
  report.norm_bound = 1.0 / report.spectral_gap;

  const double scale = 1.0 / (1.0 + rho);
  const double factor = q / (1.0 - q);
  Eigen::VectorXd y = scale * op.rhs;
  Eigen::VectorXd next(y.size());
  for (int k = 0; k < config.max_iter; ++k) {
    next.noalias() = op.matrix * y;
    next += op.rhs;
    next *= scale;
    const double step = (next - y).norm();
    y.swap(next);
    if (factor * step <= config.tol) {
      report.y = std::move(y);
      report.iterations = k;
      report.residual = residual_of(op, rho, report.y);
      return report;
    }
  }
  const double residual = residual_of(op, rho, y);
  std::ostringstream msg;
  msg << "Neumann iteration did not reach tol " << config.tol << " in " << config.max_iter
      << " steps (residual " << residual << ")";
  throw ConvergenceError(msg.str(), std::move(y), residual, config.max_iter);
}

SolveReport solve(const GapOperator& op, double rho, const SolverConfig& config,
                  std::optional<double> spectral_norm) {
  config.validate();
  if (config.method == SolveMethod::neumann) {
    return solve_neumann(op, rho, config, spectral_norm);
  }
  return solve_direct(op, rho, spectral_norm, config.condition_warn_threshold);
}

double error_bound(const GapOperator& op, double rho, double eta_norm,
                   std::optional<double> spectral_norm) {
  if (!(eta_norm >= 0.0)) {
    throw ParameterError("perturbation norm must be non-negative");
  }
  if (!(rho >= 0.0)) {
    throw ParameterError("rho must be non-negative");
  }
  const double gap = 1.0 + rho - norm_of(op, spectral_norm);
  if (!(gap > 0.0)) {
    throw SolverError("error bound unavailable: 1 + rho <= ||A||");
  }
  return eta_norm / gap;
}

}  // namespace bandfill
