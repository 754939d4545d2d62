#include "bandfill/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "bandfill/error.hpp"
#include "bandfill/operator.hpp"
#include "bandfill/recover.hpp"

namespace bandfill {

std::string_view to_string(SweepKind kind) noexcept {
  switch (kind) {
    case SweepKind::window:
      return "window";
    case SweepKind::noise:
      return "noise";
    case SweepKind::rho:
      return "rho";
    case SweepKind::gap:
      return "gap";
  }
  return "unknown";
}

namespace {

SweepKind parse_sweep(std::string_view text) {
  for (SweepKind k : {SweepKind::window, SweepKind::noise, SweepKind::rho, SweepKind::gap}) {
    if (text == to_string(k)) {
      return k;
    }
  }
  throw ParseError("unknown sweep '" + std::string(text) + "'");
}

// The value the sweep substitutes into an otherwise fixed configuration.
ExperimentConfig at_sweep_value(const ExperimentConfig& config, double value) {
  ExperimentConfig c = config;
  switch (config.sweep) {
    case SweepKind::window:
      c.half_width = static_cast<std::int64_t>(std::llround(value));
      break;
    case SweepKind::noise:
      c.sigma = value;
      break;
    case SweepKind::rho:
      c.rho = value;
      break;
    case SweepKind::gap:
      c.gap_size = static_cast<std::int64_t>(std::llround(value));
      break;
  }
  return c;
}

// Noise draws use a stream decorrelated from the signal draws.
constexpr std::uint64_t kNoiseStream = 0x9E3779B97F4A7C15ULL;

TrialRow run_trial(const ExperimentConfig& c, std::uint64_t seed) {
  TrialRow row;
  row.seed = seed;

  const auto window = IndexWindow::one_d(-c.half_width, c.half_width);
  std::vector<Index> missing;
  for (std::int64_t t = c.gap_start; t < c.gap_start + c.gap_size; ++t) {
    missing.push_back(Index{t, 0});
  }
  const ObservationMask mask = make_mask(window, missing);
  const Band band(BandLimit::fraction_of_pi(c.omega_fraction));
  const BandLimit signal_band = BandLimit::fraction_of_pi(c.signal_band_fraction);

  Rng rng(seed);
  SignalSpec spec;
  const double gap_lo = static_cast<double>(c.gap_start);
  const double gap_hi = static_cast<double>(c.gap_start + c.gap_size - 1);
  if (c.signal == SignalKind::sinc_mixture) {
    spec = random_sinc_mixture(signal_band, window, c.signal_terms, gap_lo - c.center_spread,
                               gap_hi + c.center_spread, rng);
  } else {
    spec.kind = SignalKind::lowpassed_noise;
    spec.band = signal_band;
    spec.window = window;
    spec.seed = seed;
    spec.pad = std::max<std::int64_t>(c.half_width, 200);
  }
  const BandLimitedSignal signal(spec);
  const Series clean = signal.sample(window);
  const NoisySeries noisy = add_noise(clean, mask, c.sigma, seed ^ kNoiseStream);

  GapOperator op = assemble_operator(mask, band);
  const OperatorDiagnostics diag = diagnostics(op);
  SolverConfig solver;
  solver.method = c.method;

  op.rhs = assemble_rhs(clean, mask, band);
  const Eigen::VectorXd y_clean = solve(op, c.rho, solver, diag.spectral_norm).y;
  op.rhs = assemble_rhs(noisy.series, mask, band);
  const Eigen::VectorXd y_noisy = solve(op, c.rho, solver, diag.spectral_norm).y;

  double sum_sq = 0.0;
  for (std::size_t i = 0; i < missing.size(); ++i) {
    const double err = std::abs(y_noisy[static_cast<Eigen::Index>(i)] - signal(missing[i][0]));
    row.max_abs_error = std::max(row.max_abs_error, err);
    sum_sq += err * err;
  }
  row.rms_error = std::sqrt(sum_sq / static_cast<double>(missing.size()));
  row.eta_norm = noisy.eta_norm;
  row.perturbation = (y_clean - y_noisy).norm();
  row.bound = error_bound(op, c.rho, noisy.eta_norm, diag.spectral_norm);
  row.bound_violation = row.perturbation > row.bound * (1.0 + 1e-9);
  row.lambda_min = diag.min_eig_I_minus_A;
  row.ok = true;
  return row;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) {
    throw ParameterError("trials must be at least 1");
  }
  if (!seeds.empty() && seeds.size() != static_cast<std::size_t>(trials)) {
    throw ParameterError("seed list length must equal the number of trials");
  }
  if (values.empty()) {
    throw ParameterError("sweep needs at least one value");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ParameterError("sweep values must be strictly increasing");
    }
  }
  (void)BandLimit::fraction_of_pi(omega_fraction);
  (void)BandLimit::fraction_of_pi(signal_band_fraction);
  if (signal_terms < 1 || half_width < 1 || gap_size < 1 || !(sigma >= 0.0) || !(rho >= 0.0) ||
      !(center_spread >= 0.0)) {
    throw ParameterError("experiment parameters out of range");
  }
  for (double v : values) {
    (void)at_sweep_value(*this, v);
    if ((sweep == SweepKind::noise || sweep == SweepKind::rho) && !(v >= 0.0)) {
      throw ParameterError("noise and rho sweeps need non-negative values");
    }
    if ((sweep == SweepKind::window || sweep == SweepKind::gap) && !(v >= 1.0)) {
      throw ParameterError("window and gap sweeps need values >= 1");
    }
  }
}

std::uint64_t ExperimentConfig::seed_for(int trial) const {
  return seeds.empty() ? base_seed + static_cast<std::uint64_t>(trial)
                       : seeds[static_cast<std::size_t>(trial)];
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  try {
    if (!doc.is_object()) {
      throw ParseError("experiment config must be a JSON object");
    }
    c.name = doc.value("name", c.name);
    c.sweep = parse_sweep(doc.at("sweep").get<std::string>());
    c.values = doc.at("values").get<std::vector<double>>();
    c.trials = doc.value("trials", c.trials);
    c.seeds = doc.value("seeds", c.seeds);
    c.base_seed = doc.value("base_seed", c.base_seed);
    c.omega_fraction = doc.value("omega", c.omega_fraction);
    c.signal_band_fraction = doc.value("signal_band", c.signal_band_fraction);
    c.signal = parse_signal_kind(doc.value("signal", std::string(to_string(c.signal))));
    c.signal_terms = doc.value("signal_terms", c.signal_terms);
    c.center_spread = doc.value("center_spread", c.center_spread);
    c.half_width = doc.value("half_width", c.half_width);
    c.gap_start = doc.value("gap_start", c.gap_start);
    c.gap_size = doc.value("gap_size", c.gap_size);
    c.sigma = doc.value("sigma", c.sigma);
    c.rho = doc.value("rho", c.rho);
    c.method = parse_solve_method(doc.value("solver", std::string(to_string(c.method))));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return nlohmann::json{{"name", c.name},
                        {"sweep", to_string(c.sweep)},
                        {"values", c.values},
                        {"trials", c.trials},
                        {"seeds", c.seeds},
                        {"base_seed", c.base_seed},
                        {"omega", c.omega_fraction},
                        {"signal_band", c.signal_band_fraction},
                        {"signal", to_string(c.signal)},
                        {"signal_terms", c.signal_terms},
                        {"center_spread", c.center_spread},
                        {"half_width", c.half_width},
                        {"gap_start", c.gap_start},
                        {"gap_size", c.gap_size},
                        {"sigma", c.sigma},
                        {"rho", c.rho},
                        {"solver", to_string(c.method)}};
}

bool ExperimentReport::error_strictly_decreasing() const {
  for (std::size_t i = 1; i < aggregates.size(); ++i) {
    if (!(aggregates[i].max_max_abs_error < aggregates[i - 1].max_max_abs_error)) {
      return false;
    }
  }
  return true;
}

bool ExperimentReport::lambda_min_strictly_decreasing() const {
  for (std::size_t i = 1; i < aggregates.size(); ++i) {
    if (!(aggregates[i].lambda_min < aggregates[i - 1].lambda_min)) {
      return false;
    }
  }
  return true;
}

int ExperimentReport::total_bound_violations() const {
  int n = 0;
  for (const auto& a : aggregates) {
    n += a.bound_violation_count;
  }
  return n;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.config = to_json(config);
  report.rng = std::string(kRngName);

  int failures = 0;
  for (double value : config.values) {
    const ExperimentConfig c = at_sweep_value(config, value);
    SweepAggregate agg;
    agg.sweep_value = value;
    int ok = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t seed = config.seed_for(trial);
      TrialRow row;
      try {
        row = run_trial(c, seed);
      } catch (const Error& e) {
        row = TrialRow{};
        row.seed = seed;
        row.error = e.what();
      }
      row.sweep_value = value;
      row.trial = trial;
      ++agg.trials;
      if (row.ok) {
        ++ok;
        agg.mean_max_abs_error += row.max_abs_error;
        agg.max_max_abs_error = std::max(agg.max_max_abs_error, row.max_abs_error);
        agg.mean_rms_error += row.rms_error;
        agg.bound_violation_count += row.bound_violation ? 1 : 0;
        agg.lambda_min = row.lambda_min;
      } else {
        ++agg.failures;
        ++failures;
      }
      report.rows.push_back(std::move(row));
    }
    if (ok > 0) {
      agg.mean_max_abs_error /= ok;
      agg.mean_rms_error /= ok;
    }
    report.aggregates.push_back(agg);
  }
  if (failures == static_cast<int>(report.rows.size())) {
    throw SolverError("every trial of experiment '" + config.name + "' failed: " +
                      report.rows.front().error);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TrialRow& r : report.rows) {
    nlohmann::json j{{"sweep_value", r.sweep_value},
                     {"trial", r.trial},
                     {"seed", r.seed},
                     {"ok", r.ok},
                     {"max_abs_error", r.max_abs_error},
                     {"rms_error", r.rms_error},
                     {"eta_norm", r.eta_norm},
                     {"perturbation", r.perturbation},
                     {"bound", r.bound},
                     {"bound_violation", r.bound_violation},
                     {"lambda_min", r.lambda_min}};
    if (!r.ok) {
      j["error"] = r.error;
    }
    rows.push_back(std::move(j));
  }
  nlohmann::json aggregates = nlohmann::json::array();
  for (const SweepAggregate& a : report.aggregates) {
    aggregates.push_back({{"sweep_value", a.sweep_value},
                          {"trials", a.trials},
                          {"failures", a.failures},
                          {"mean_max_abs_error", a.mean_max_abs_error},
                          {"max_max_abs_error", a.max_max_abs_error},
                          {"mean_rms_error", a.mean_rms_error},
                          {"bound_violation_count", a.bound_violation_count},
                          {"lambda_min", a.lambda_min}});
  }
  return nlohmann::json{{"config", report.config},
                        {"rng", report.rng},
                        {"rows", std::move(rows)},
                        {"aggregates", std::move(aggregates)},
                        {"summary",
                         {{"error_strictly_decreasing", report.error_strictly_decreasing()},
                          {"lambda_min_strictly_decreasing", report.lambda_min_strictly_decreasing()},
                          {"bound_violations", report.total_bound_violations()}}},
                        {"timing", {{"wall_seconds", report.wall_seconds}}}};
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  const auto precision = out.precision(17);
  out << "sweep_value,trial,seed,ok,max_abs_error,rms_error,eta_norm,perturbation,bound,"
         "bound_violation,lambda_min\n";
  for (const TrialRow& r : report.rows) {
    out << r.sweep_value << ',' << r.trial << ',' << r.seed << ',' << (r.ok ? 1 : 0) << ','
        << r.max_abs_error << ',' << r.rms_error << ',' << r.eta_norm << ',' << r.perturbation
        << ',' << r.bound << ',' << (r.bound_violation ? 1 : 0) << ',' << r.lambda_min << '\n';
  }
  out.precision(precision);
}

}  // namespace bandfill
