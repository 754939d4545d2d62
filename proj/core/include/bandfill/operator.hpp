#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "bandfill/kernel.hpp"
#include "bandfill/masks.hpp"

namespace bandfill {

/// The gap operator A = I_M P I_M restricted to the missing set, together
/// with the data term a(x) = I_M P(observed x).
///
/// matrix(i, j) = h(t_i - t_j) for the i-th and j-th missing indices in mask
/// order, so A is symmetric with constant diagonal h(0). It is positive
/// semidefinite with spectral norm strictly below one for finite M.
struct GapOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<Index> order;
  Band band;
};

struct OperatorDiagnostics {
  double spectral_norm = 0.0;
  double min_eig_I_minus_A = 0.0;
  double symmetry_defect = 0.0;
  std::size_t size = 0;
  /// Eigenvalues of A in ascending order.
  Eigen::VectorXd eigenvalues;
};

/// Builds the matrix part; the rhs is left as a zero vector.
/// Throws GeometryError when the mask has no missing indices or its
/// dimensionality differs from the band's.
GapOperator assemble_operator(const ObservationMask& mask, const Band& band);

/// a(x)_i = sum over observed in-window m of x(m) h(t_i - m). Samples
/// outside the window contribute nothing.
Eigen::VectorXd assemble_rhs(const Series& series, const ObservationMask& mask, const Band& band);

/// Matrix and rhs in one call.
GapOperator assemble(const Series& series, const ObservationMask& mask, const Band& band);

/// Zeroes the rows and columns of missing indices outside D_N = {|t| <= N}
/// (max-norm in 2D). The rhs is untouched, so in the truncated equation the
/// dropped rows reduce to (1 + rho) y_i = a_i. Index order is kept.
GapOperator truncate_operator(const GapOperator& op, std::int64_t n);

/// Full symmetric eigendecomposition of A. Falls back to power iteration
/// (tolerance 1e-12, at most 10'000 steps) if the eigensolver fails.
OperatorDiagnostics diagnostics(const GapOperator& op);

/// Largest |eigenvalue| of a symmetric matrix by power iteration.
double power_iteration_norm(const Eigen::MatrixXd& matrix, double tol = 1e-12,
                            int max_iter = 10'000);

/// Row-major CSV dump. The first line is a '#' comment listing the missing
/// indices in row order.
void write_operator_csv(std::ostream& out, const GapOperator& op);

}  // namespace bandfill
