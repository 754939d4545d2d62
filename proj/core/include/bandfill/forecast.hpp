#pragma once

#include <optional>
#include <vector>

#include "bandfill/recover.hpp"

namespace bandfill {

/// Short-horizon forecasting by interpolation: the past {-q..0} and a dummy
/// long-horizon forecast on {gap+1..outer} are treated as observed, the
/// range {1..gap} as missing, and only the first `horizon` recovered values
/// are accepted.
struct ForecastSpec {
  /// Observed past, window [-q, 0] with q >= 1.
  Series past;
  int horizon = 3;
  int gap = 12;
  /// Outer truncation bound N; the computation window is [-q, N].
  int outer = 60;
  /// Dummy values on a window covering [gap+1, outer]. Unset means zero.
  std::optional<Series> dummy;
  Band band = Band(BandLimit::fraction_of_pi(0.25));
  /// Unset follows the recover() default (0 with a small-rho fallback).
  std::optional<double> rho;
  SolverConfig solver;

  void validate() const;
};

struct ForecastResult {
  /// Accepted forecast on {1..horizon}; a prefix of full_gap.
  std::vector<double> values;
  /// Recovered values on {1..gap}.
  std::vector<double> full_gap;
  RecoverySolution solution;
};

ForecastResult forecast(const ForecastSpec& spec);

struct SensitivityRow {
  int gap = 0;
  /// Largest pairwise max-abs distance of the accepted forecasts.
  double max_pairwise_distance = 0.0;
};

struct SensitivityReport {
  std::vector<SensitivityRow> rows;
  /// True when the distance never increases from one gap to the next.
  bool non_increasing = true;
  /// Number of gap steps where the distance increased.
  int increases = 0;
};

/// Runs forecast() for every (gap, dummy) pair and measures how much the
/// accepted forecast depends on the dummy. Needs at least two dummies and a
/// strictly increasing gap list; every dummy must cover [gap+1, outer] for
/// the smallest gap.
SensitivityReport dummy_sensitivity(const Series& past, int horizon,
                                    const std::vector<Series>& dummies,
                                    const std::vector<int>& gaps, int outer, const Band& band,
                                    std::optional<double> rho);

}  // namespace bandfill
