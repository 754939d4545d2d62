#pragma once

#include <vector>

#include "bandfill/recover.hpp"

namespace bandfill {

/// Largest window half-width the oracle accepts.
inline constexpr std::int64_t kOracleMaxHalfWidth = 64;

/// Gauss-Legendre nodes and weights on [a, b].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int points, double a, double b);

/// Brute-force solution of the fitting problem
///
///   minimise  sum_{t in D} (z(t) - x(t))^2 + rho * ||z||^2
///
/// over real band-limited z, where D is everything but the missing set and
/// x is zero outside the window. z is parameterised in the frequency domain
/// by cosine and sine amplitudes at `grid` Gauss-Legendre nodes on
/// [0, omega]; ||z||^2 is the quadrature of |Z|^2 and the infinite sum over
/// D is written as ||z||^2 minus the missing-set terms. The normal
/// equations are solved densely and z is returned on M.
///
/// Does not touch the gap operator, the solver or the time-domain kernel.
///
/// Requirements: 1D problem, window half-width (from its centre) at most
/// kOracleMaxHalfWidth, grid >= 4 * window size. Throws NumericError when
/// the normal equations are numerically singular.
RecoverySolution oracle_recover(const RecoveryProblem& problem, int grid);

/// Smallest admissible grid for a problem, 4 * window size.
int oracle_default_grid(const RecoveryProblem& problem);

/// Max-abs change of the oracle output when the grid is doubled. The oracle
/// is only trusted when this is at most 1e-8.
double oracle_refinement_gap(const RecoveryProblem& problem, int grid);

inline constexpr double kOracleSelfConsistencyTol = 1e-8;

}  // namespace bandfill
