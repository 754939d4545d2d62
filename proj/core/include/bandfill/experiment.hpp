#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bandfill/lab.hpp"
#include "bandfill/solver.hpp"

namespace bandfill {

enum class SweepKind { window, noise, rho, gap };

std::string_view to_string(SweepKind kind) noexcept;

/// One Monte Carlo study. Each trial synthesises a band-limited signal on
/// [-half_width, half_width], hides {gap_start .. gap_start+gap_size-1},
/// optionally perturbs the observed samples and recovers the gap. The swept
/// parameter replaces the corresponding fixed value.
struct ExperimentConfig {
  std::string name = "experiment";
  SweepKind sweep = SweepKind::window;
  std::vector<double> values;
  int trials = 1;
  /// One seed per trial; when empty, trial i uses base_seed + i.
  std::vector<std::uint64_t> seeds;
  std::uint64_t base_seed = 1;

  double omega_fraction = 0.25;
  double signal_band_fraction = 0.2;
  SignalKind signal = SignalKind::sinc_mixture;
  int signal_terms = 4;
  /// Pulse centers are drawn within this distance of the gap.
  double center_spread = 20.0;
  std::int64_t half_width = 500;
  std::int64_t gap_start = 1;
  std::int64_t gap_size = 5;
  double sigma = 0.0;
  double rho = 0.0;
  SolveMethod method = SolveMethod::direct;

  void validate() const;
  std::uint64_t seed_for(int trial) const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

struct TrialRow {
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double max_abs_error = 0.0;
  double rms_error = 0.0;
  double eta_norm = 0.0;
  /// ||y - y_eta|| between clean and perturbed recoveries.
  double perturbation = 0.0;
  double bound = 0.0;
  bool bound_violation = false;
  double lambda_min = 0.0;
};

struct SweepAggregate {
  double sweep_value = 0.0;
  int trials = 0;
  int failures = 0;
  double mean_max_abs_error = 0.0;
  double max_max_abs_error = 0.0;
  double mean_rms_error = 0.0;
  int bound_violation_count = 0;
  double lambda_min = 0.0;
};

struct ExperimentReport {
  nlohmann::json config;
  std::string rng;
  std::vector<TrialRow> rows;
  std::vector<SweepAggregate> aggregates;
  double wall_seconds = 0.0;

  /// True when the sweep's max_max_abs_error strictly decreases.
  bool error_strictly_decreasing() const;
  /// True when lambda_min strictly decreases along the sweep.
  bool lambda_min_strictly_decreasing() const;
  int total_bound_violations() const;
};

/// Runs every (sweep value, trial) pair in seed order. Individual trial
/// failures are recorded; throws SolverError only if all trials fail.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Full report. Timing lives under "timing" so the rest is reproducible
/// bit for bit.
nlohmann::json to_json(const ExperimentReport& report);
void write_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace bandfill
