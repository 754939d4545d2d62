#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandfill/masks.hpp"
#include "bandfill/operator.hpp"
#include "bandfill/solver.hpp"

namespace bandfill {

/// rho used when the caller leaves it unset: 0 up to this many missing
/// samples, kLargeGapRho above.
inline constexpr std::size_t kSmallGapLimit = 32;
inline constexpr double kLargeGapRho = 1e-4;

struct RecoveryProblem {
  Series series;
  ObservationMask mask;
  Band band;
  std::optional<double> rho;
  SolverConfig solver;
};

struct RecoverySolution {
  /// Recovered values keyed by missing index, in mask order.
  std::vector<std::pair<Index, double>> values;
  OperatorDiagnostics diagnostics;
  SolveReport report;
  std::vector<std::string> warnings;

  double value_at(Index t) const;
  Eigen::VectorXd vector() const;
};

/// Optimal band-limited fill of the missing set: solves
/// (1 + rho) y = A y + a(x) over M. Only the missing trace is computed.
///
/// With rho unset the default is 0 for |M| <= kSmallGapLimit and
/// kLargeGapRho otherwise; if the rho = 0 solve is flagged ill-conditioned
/// it is repeated with kLargeGapRho and a warning is attached.
///
/// A 2D window that is a single row or column is solved as the 1D problem
/// along its long axis, with that axis' band limit.
RecoverySolution recover(const RecoveryProblem& problem);

/// Same as recover() but rejects anything other than a 2D problem.
RecoverySolution recover_2d(const RecoveryProblem& problem);

/// Closed form for a single missing sample s:
///   x(s) = omega / (pi - omega) * sum_{m != s} x(m) sinc(omega (s - m)),
/// the sum running over the window. The stored value at s is ignored.
double recover_single_value(const Series& series, std::int64_t s, BandLimit band);

}  // namespace bandfill
