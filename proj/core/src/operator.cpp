#include "bandfill/operator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "bandfill/error.hpp"

namespace bandfill {

namespace {

void check_dims(const ObservationMask& mask, const Band& band) {
  if (mask.window().dims() != band.dims()) {
    throw GeometryError("mask and band have different dimensionality");
  }
}

Index lag(Index a, Index b) { return Index{a[0] - b[0], a[1] - b[1]}; }

}  // namespace

GapOperator assemble_operator(const ObservationMask& mask, const Band& band) {
  check_dims(mask, band);
  const auto missing = mask.missing();
  const auto n = static_cast<Eigen::Index>(missing.size());
  if (n == 0) {
    throw GeometryError("missing set is empty, nothing to recover");
  }

  Eigen::MatrixXd a(n, n);
  if (band.dims() == 1) {
    // Entries depend on t_i - t_j only; tabulate the kernel once per lag.
    const std::int64_t span = missing.back()[0] - missing.front()[0];
    std::vector<double> by_lag(static_cast<std::size_t>(span) + 1);
    for (std::int64_t d = 0; d <= span; ++d) {
      by_lag[static_cast<std::size_t>(d)] = band.kernel(Index{d, 0});
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, i) = by_lag[0];
      for (Eigen::Index j = 0; j < i; ++j) {
        const auto d = static_cast<std::size_t>(missing[static_cast<std::size_t>(i)][0] -
                                                missing[static_cast<std::size_t>(j)][0]);
        a(i, j) = by_lag[d];
        a(j, i) = by_lag[d];
      }
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, i) = band.peak();
      for (Eigen::Index j = 0; j < i; ++j) {
        const double v = band.kernel(
            lag(missing[static_cast<std::size_t>(i)], missing[static_cast<std::size_t>(j)]));
        a(i, j) = v;
        a(j, i) = v;
      }
    }
  }

  return GapOperator{std::move(a), Eigen::VectorXd::Zero(n),
                     std::vector<Index>(missing.begin(), missing.end()), band};
}

Eigen::VectorXd assemble_rhs(const Series& series, const ObservationMask& mask, const Band& band) {
  check_dims(mask, band);
  if (!(series.window() == mask.window())) {
    throw GeometryError("series window does not match mask window");
  }
  const auto missing = mask.missing();
  const IndexWindow& window = mask.window();
  const auto values = series.values();

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(missing.size()));
  for (std::size_t off = 0; off < window.size(); ++off) {
    if (mask.is_missing_at(off)) {
      continue;
    }
    const double x = values[off];
    if (!std::isfinite(x)) {
      throw NumericError("non-finite observed sample at " +
                         format_index(window.index_at(off), window.dims()));
    }
    if (x == 0.0) {
      continue;
    }
    const Index m = window.index_at(off);
    for (std::size_t i = 0; i < missing.size(); ++i) {
      rhs[static_cast<Eigen::Index>(i)] += x * band.kernel(lag(missing[i], m));
    }
  }
  return rhs;
}

GapOperator assemble(const Series& series, const ObservationMask& mask, const Band& band) {
  GapOperator op = assemble_operator(mask, band);
  op.rhs = assemble_rhs(series, mask, band);
  return op;
}

GapOperator truncate_operator(const GapOperator& op, std::int64_t n) {
  if (n < 0) {
    throw ParameterError("truncation bound must be non-negative");
  }
  GapOperator out = op;
  const int dims = op.band.dims();
  for (std::size_t i = 0; i < op.order.size(); ++i) {
    const Index& t = op.order[i];
    const std::int64_t reach = dims == 1 ? std::abs(t[0]) : std::max(std::abs(t[0]), std::abs(t[1]));
    if (reach > n) {
      const auto k = static_cast<Eigen::Index>(i);
      out.matrix.row(k).setZero();
      out.matrix.col(k).setZero();
    }
  }
  return out;
}

double power_iteration_norm(const Eigen::MatrixXd& matrix, double tol, int max_iter) {
  const Eigen::Index n = matrix.rows();
  if (n == 0) {
    return 0.0;
  }
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double estimate = 0.0;
  for (int k = 0; k < max_iter; ++k) {
    Eigen::VectorXd w = matrix * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      return 0.0;
    }
    w /= norm;
    if (std::abs(norm - estimate) <= tol * std::max(1.0, norm)) {
      return norm;
    }
    estimate = norm;
    v = std::move(w);
  }
  return estimate;
}

OperatorDiagnostics diagnostics(const GapOperator& op) {
  OperatorDiagnostics d;
  d.size = static_cast<std::size_t>(op.matrix.rows());
  d.symmetry_defect = (op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.matrix, Eigen::EigenvaluesOnly);
  if (eig.info() == Eigen::Success) {
    d.eigenvalues = eig.eigenvalues();
    d.spectral_norm = std::max(std::abs(d.eigenvalues.minCoeff()), std::abs(d.eigenvalues.maxCoeff()));
    d.min_eig_I_minus_A = 1.0 - d.eigenvalues.maxCoeff();
  } else {
    d.spectral_norm = power_iteration_norm(op.matrix);
    d.min_eig_I_minus_A = 1.0 - d.spectral_norm;
  }
  return d;
}

void write_operator_csv(std::ostream& out, const GapOperator& op) {
  const int dims = op.band.dims();
  out << "# rows/columns in missing-index order:";
  for (const Index& t : op.order) {
    out << ' ' << format_index(t, dims);
  }
  out << '\n';
  const auto precision = out.precision(17);
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
      if (j > 0) {
        out << ',';
      }
      out << op.matrix(i, j);
    }
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace bandfill
