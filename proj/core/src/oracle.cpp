#include "bandfill/oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "bandfill/error.hpp"

namespace bandfill {

Quadrature gauss_legendre(int points, double a, double b) {
  if (points < 1) {
    throw ParameterError("quadrature needs at least one point");
  }
  const auto n = static_cast<std::size_t>(points);
  Quadrature q{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Roots are symmetric; Newton on P_n from the Tricomi initial guess.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = mid - half * x;
    q.nodes[n - 1 - i] = mid + half * x;
    q.weights[i] = half * w;
    q.weights[n - 1 - i] = half * w;
  }
  return q;
}

int oracle_default_grid(const RecoveryProblem& problem) {
  return static_cast<int>(4 * problem.mask.window().size());
}

namespace {

void check_problem(const RecoveryProblem& problem, int grid) {
  const IndexWindow& w = problem.mask.window();
  if (w.dims() != 1 || problem.band.dims() != 1) {
    throw ParameterError("the oracle is one-dimensional");
  }
  if (!(problem.series.window() == w)) {
    throw GeometryError("series window does not match mask window");
  }
  if (w.extent(0) > static_cast<std::size_t>(2 * kOracleMaxHalfWidth + 1)) {
    throw ParameterError("oracle window half-width exceeds 64");
  }
  if (static_cast<std::size_t>(grid) < 4 * w.size()) {
    throw ParameterError("oracle grid must be at least 4 x window size");
  }
  if (problem.mask.missing_count() == 0) {
    throw GeometryError("missing set is empty, nothing to recover");
  }
}

Eigen::VectorXd solve_on_grid(const RecoveryProblem& problem, int grid) {
  const double omega = problem.band.axis(0).omega();
  const double rho = problem.rho.value_or(0.0);
  const IndexWindow& window = problem.mask.window();
  const Quadrature quad = gauss_legendre(grid, 0.0, omega);
  const auto k = static_cast<Eigen::Index>(grid);

  // Row of the synthesis map z(t) = sum_k s_k (u_k cos(w_k t) + v_k sin(w_k t)),
  // s_k = sqrt(weight_k / pi), so that ||z||^2 = |u|^2 + |v|^2.
  Eigen::VectorXd scale(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    scale[j] = std::sqrt(quad.weights[static_cast<std::size_t>(j)] / std::numbers::pi);
  }
  const auto synthesis_row = [&](std::int64_t t) {
    Eigen::RowVectorXd row(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double arg = quad.nodes[static_cast<std::size_t>(j)] * static_cast<double>(t);
      row[j] = scale[j] * std::cos(arg);
      row[k + j] = scale[j] * std::sin(arg);
    }
    return row;
  };

  const auto missing = problem.mask.missing();
  Eigen::MatrixXd b_missing(static_cast<Eigen::Index>(missing.size()), 2 * k);
  for (std::size_t i = 0; i < missing.size(); ++i) {
    b_missing.row(static_cast<Eigen::Index>(i)) = synthesis_row(missing[i][0]);
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * k);
  const auto values = problem.series.values();
  for (std::size_t off = 0; off < values.size(); ++off) {
    if (problem.mask.is_missing_at(off) || values[off] == 0.0) {
      continue;
    }
    rhs += values[off] * synthesis_row(window.index_at(off)[0]).transpose();
  }

  Eigen::MatrixXd normal = -b_missing.transpose() * b_missing;
  normal.diagonal().array() += 1.0 + rho;
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
    throw NumericError("oracle normal equations are numerically singular; shrink the instance");
  }
  return b_missing * llt.solve(rhs);
}

}  // namespace

RecoverySolution oracle_recover(const RecoveryProblem& problem, int grid) {
  check_problem(problem, grid);
  RecoverySolution solution;
  solution.report.y = solve_on_grid(problem, grid);
  solution.report.rho = problem.rho.value_or(0.0);
  const auto missing = problem.mask.missing();
  for (std::size_t i = 0; i < missing.size(); ++i) {
    solution.values.emplace_back(missing[i], solution.report.y[static_cast<Eigen::Index>(i)]);
  }
  return solution;
}

double oracle_refinement_gap(const RecoveryProblem& problem, int grid) {
  check_problem(problem, grid);
  const Eigen::VectorXd coarse = solve_on_grid(problem, grid);
  const Eigen::VectorXd fine = solve_on_grid(problem, 2 * grid);
  return (coarse - fine).cwiseAbs().maxCoeff();
}

}  // namespace bandfill
