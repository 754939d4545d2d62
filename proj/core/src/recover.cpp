#include "bandfill/recover.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bandfill/error.hpp"

namespace bandfill {

double RecoverySolution::value_at(Index t) const {
  for (const auto& [index, value] : values) {
    if (index == t) {
      return value;
    }
  }
  throw GeometryError("index is not part of the recovered set");
}

Eigen::VectorXd RecoverySolution::vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = values[i].second;
  }
  return v;
}

namespace {

bool observed_all_zero(const Series& series, const ObservationMask& mask) {
  const auto values = series.values();
  for (std::size_t off = 0; off < values.size(); ++off) {
    if (!mask.is_missing_at(off) && values[off] != 0.0) {
      return false;
    }
  }
  return true;
}

std::string gap_warning(const SolveReport& report) {
  std::ostringstream msg;
  msg << "ill-conditioned system: 1 + rho - ||A|| = " << report.spectral_gap << " at rho = "
      << report.rho;
  return msg.str();
}

// A 2D window that is a single row (or column) carries no information along
// the short axis; solve along the long axis with that axis' band.
std::optional<RecoveryProblem> collapse_to_1d(const RecoveryProblem& problem) {
  const IndexWindow& w = problem.mask.window();
  if (w.dims() != 2 || problem.band.dims() != 2) {
    return std::nullopt;
  }
  int axis = -1;
  if (w.extent(0) == 1) {
    axis = 1;
  } else if (w.extent(1) == 1) {
    axis = 0;
  } else {
    return std::nullopt;
  }
  const auto k = static_cast<std::size_t>(axis);
  const auto line = IndexWindow::one_d(w.lo()[k], w.hi()[k]);
  std::vector<double> values(problem.series.values().begin(), problem.series.values().end());
  std::vector<Index> missing;
  for (const Index& t : problem.mask.missing()) {
    missing.push_back(Index{t[k], 0});
  }
  return RecoveryProblem{Series(line, std::move(values)), make_mask(line, missing),
                         Band(problem.band.axis(axis)), problem.rho, problem.solver};
}

}  // namespace

RecoverySolution recover(const RecoveryProblem& problem) {
  if (problem.mask.window().dims() != problem.band.dims()) {
    throw GeometryError("mask and band have different dimensionality");
  }
  if (problem.mask.missing_count() > 0) {
    if (auto line = collapse_to_1d(problem)) {
      RecoverySolution solution = recover(*line);
      for (std::size_t i = 0; i < solution.values.size(); ++i) {
        solution.values[i].first = problem.mask.missing()[i];
      }
      solution.warnings.emplace_back("single-row 2D window solved as a 1D problem");
      return solution;
    }
  }

  const ObservationMask& mask = problem.mask;
  if (mask.missing_count() == 0) {
    throw GeometryError("missing set is empty, nothing to recover");
  }
  if (problem.rho && !(*problem.rho >= 0.0)) {
    throw ParameterError("rho must be non-negative");
  }
  problem.solver.validate();

  RecoverySolution solution;
  if (!has_observed_half_line(mask)) {
    solution.warnings.emplace_back(
        "observed set has no half-line on the window boundary; the band-limited extension "
        "need not be unique");
  }

  GapOperator op = assemble_operator(mask, problem.band);
  solution.diagnostics = diagnostics(op);
  const double a_norm = solution.diagnostics.spectral_norm;

  double rho = problem.rho.value_or(mask.missing_count() <= kSmallGapLimit ? 0.0 : kLargeGapRho);

  if (observed_all_zero(problem.series, mask)) {
    SolveReport report;
    report.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mask.missing_count()));
    report.method = problem.solver.method;
    report.rho = rho;
    report.spectral_gap = 1.0 + rho - a_norm;
    report.norm_bound = 1.0 / report.spectral_gap;
    solution.report = std::move(report);
  } else {
    op.rhs = assemble_rhs(problem.series, mask, problem.band);
    solution.report = solve(op, rho, problem.solver, a_norm);
    if (solution.report.ill_conditioned && !problem.rho && rho == 0.0) {
      solution.warnings.push_back(gap_warning(solution.report) + "; retrying with rho = " +
                                  std::to_string(kLargeGapRho));
      rho = kLargeGapRho;
      solution.report = solve(op, rho, problem.solver, a_norm);
    }
    if (solution.report.ill_conditioned) {
      solution.warnings.push_back(gap_warning(solution.report));
    }
  }

  const auto missing = mask.missing();
  solution.values.reserve(missing.size());
  for (std::size_t i = 0; i < missing.size(); ++i) {
    solution.values.emplace_back(missing[i], solution.report.y[static_cast<Eigen::Index>(i)]);
  }
  return solution;
}

RecoverySolution recover_2d(const RecoveryProblem& problem) {
  if (problem.mask.window().dims() != 2 || problem.band.dims() != 2) {
    throw GeometryError("recover_2d needs a 2D mask and a 2D band");
  }
  return recover(problem);
}

double recover_single_value(const Series& series, std::int64_t s, BandLimit band) {
  const IndexWindow& window = series.window();
  if (window.dims() != 1) {
    throw GeometryError("single-value recovery is one-dimensional");
  }
  if (!window.contains(Index{s, 0})) {
    throw GeometryError("recovery point lies outside the series window");
  }
  const double omega = band.omega();
  const auto values = series.values();
  double sum = 0.0;
  for (std::size_t off = 0; off < values.size(); ++off) {
    const std::int64_t m = window.lo()[0] + static_cast<std::int64_t>(off);
    if (m == s) {
      continue;
    }
    sum += values[off] * sinc(omega * static_cast<double>(s - m));
  }
  return omega / (std::numbers::pi - omega) * sum;
}

}  // namespace bandfill
