#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bandfill/error.hpp"
#include "bandfill/experiment.hpp"
#include "bandfill/forecast.hpp"
#include "bandfill/lab.hpp"
#include "bandfill/operator.hpp"
#include "bandfill/recover.hpp"
#include "bandfill/series_io.hpp"
#include "bandfill/version.hpp"

namespace bandfill::cli {

namespace {

using nlohmann::json;

/// Seed of the synthetic past used by `forecast` when no --input is given.
constexpr std::uint64_t kDemoSeed = 2017;

struct SolverFlags {
  std::optional<double> rho;
  std::string method = "direct";
  double tol = 1e-12;
  int max_iter = 1'000'000;

  SolverConfig config() const {
    SolverConfig c;
    c.method = parse_solve_method(method);
    c.tol = tol;
    c.max_iter = max_iter;
    return c;
  }
};

struct OutputFlags {
  std::string path;
  std::string format = "json";
};

void add_solver_flags(CLI::App& cmd, SolverFlags& f) {
  cmd.add_option("--rho", f.rho, "Regularisation weight (default: 0 for |M| <= 32, else 1e-4)");
  cmd.add_option("--solver", f.method, "direct | neumann")
      ->check(CLI::IsMember({"direct", "neumann"}));
  cmd.add_option("--tol", f.tol, "Neumann tolerance");
  cmd.add_option("--max-iter", f.max_iter, "Neumann iteration budget");
}

void add_output_flags(CLI::App& cmd, OutputFlags& f) {
  cmd.add_option("--output,-o", f.path, "Output file (default: stdout)");
  cmd.add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

json solver_json(const SolverFlags& f) {
  json j{{"solver", f.method}, {"tol", f.tol}, {"max_iter", f.max_iter}};
  j["rho"] = f.rho ? json(*f.rho) : json(nullptr);
  return j;
}

json header(std::string_view command, json config) {
  return json{{"tool", "bandfill"},
              {"version", kVersion},
              {"command", command},
              {"config", std::move(config)}};
}

json diagnostics_json(const OperatorDiagnostics& d) {
  return json{{"size", d.size},
              {"spectral_norm", d.spectral_norm},
              {"min_eig_I_minus_A", d.min_eig_I_minus_A},
              {"symmetry_defect", d.symmetry_defect}};
}

json report_json(const SolveReport& r) {
  return json{{"method", to_string(r.method)}, {"rho", r.rho},
              {"residual", r.residual},        {"iterations", r.iterations},
              {"norm_bound", r.norm_bound},    {"spectral_gap", r.spectral_gap},
              {"ill_conditioned", r.ill_conditioned}};
}

json index_json(Index t, int dims) {
  if (dims == 1) {
    return json(t[0]);
  }
  return json::array({t[0], t[1]});
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

/// Writes to the --output file, or to `out` when none was given.
void emit(const OutputFlags& flags, std::ostream& out, const std::string& text) {
  if (flags.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.path);
  if (!file) {
    throw ParseError("cannot open output file '" + flags.path + "'");
  }
  file << text;
}

/// CSV preamble: the JSON header on one comment line.
std::string csv_preamble(const json& head) { return "# " + head.dump() + "\n"; }

SeriesFile load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open input file '" + path + "'");
  }
  return read_series_csv(in);
}

Band make_band(double omega, std::optional<double> omega2, int dims) {
  if (dims == 1) {
    return Band(BandLimit::fraction_of_pi(omega));
  }
  return Band(BandLimit::fraction_of_pi(omega), BandLimit::fraction_of_pi(omega2.value_or(omega)));
}

// ---------------------------------------------------------------- recover

struct RecoverFlags {
  std::string input;
  std::string missing;
  double omega = 0.25;
  std::optional<double> omega2;
  SolverFlags solver;
  OutputFlags output;
};

void cmd_recover(const RecoverFlags& f, std::ostream& out, std::ostream& err) {
  const SeriesFile file = load_series(f.input);
  const std::vector<Index> missing = parse_index_set(f.missing, file.dims);
  if (missing.empty()) {
    throw GeometryError("--missing selects no indices, nothing to recover");
  }
  const IndexWindow window = bounding_window(file, missing);
  auto [series, absent] = densify(file, window);
  const ObservationMask mask = make_mask(window, missing);
  for (const Index& t : absent) {
    if (!mask.is_missing(t)) {
      throw GeometryError("sample " + format_index(t, file.dims) +
                          " is absent from the input but not listed in --missing");
    }
  }

  const RecoveryProblem problem{std::move(series), mask, make_band(f.omega, f.omega2, file.dims),
                                f.solver.rho, f.solver.config()};
  const RecoverySolution sol = recover(problem);
  for (const std::string& w : sol.warnings) {
    err << "warning: " << w << '\n';
  }

  json config = solver_json(f.solver);
  config["input"] = f.input;
  config["missing"] = f.missing;
  config["omega"] = f.omega;
  if (file.dims == 2) {
    config["omega2"] = f.omega2.value_or(f.omega);
  }
  config["window"] = {{"lo", index_json(window.lo(), file.dims)},
                      {"hi", index_json(window.hi(), file.dims)}};
  json head = header("recover", std::move(config));

  if (f.output.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(head);
    s << "# diagnostics " << diagnostics_json(sol.diagnostics).dump() << '\n';
    s << "# solve " << report_json(sol.report).dump() << '\n';
    s << (file.dims == 1 ? "t,value\n" : "t1,t2,value\n");
    for (const auto& [t, v] : sol.values) {
      s << t[0] << ',';
      if (file.dims == 2) {
        s << t[1] << ',';
      }
      s << fmt(v) << '\n';
    }
    emit(f.output, out, s.str());
    return;
  }
  json values = json::array();
  for (const auto& [t, v] : sol.values) {
    values.push_back({{"index", index_json(t, file.dims)}, {"value", v}});
  }
  head["values"] = std::move(values);
  head["diagnostics"] = diagnostics_json(sol.diagnostics);
  head["solve"] = report_json(sol.report);
  head["warnings"] = sol.warnings;
  emit(f.output, out, head.dump(2) + "\n");
}

// ---------------------------------------------------------------- forecast

struct ForecastFlags {
  std::string input;
  std::string dummy = "zero";
  int horizon = 3;
  int gap = 12;
  int outer = 60;
  int past = 60;
  double omega = 0.25;
  double signal_band = 0.2;
  std::uint64_t seed = kDemoSeed;
  SolverFlags solver;
  OutputFlags output;
};

void cmd_forecast(const ForecastFlags& f, std::ostream& out, std::ostream& err) {
  std::optional<BandLimitedSignal> demo;
  Series past = Series::one_d(0, {0.0});
  if (f.input.empty()) {
    if (f.past < 1) {
      throw ParameterError("--past must be at least 1");
    }
    Rng rng(f.seed);
    const SignalSpec spec =
        random_sinc_mixture(BandLimit::fraction_of_pi(f.signal_band),
                            IndexWindow::one_d(-f.past, f.outer), 6, -f.past, 10.0, rng);
    demo.emplace(spec);
    past = demo->sample(IndexWindow::one_d(-f.past, 0));
  } else {
    const SeriesFile file = load_series(f.input);
    if (file.dims != 1) {
      throw GeometryError("forecast input must be one-dimensional");
    }
    const IndexWindow window = bounding_window(file, {Index{0, 0}});
    if (window.hi()[0] != 0) {
      throw GeometryError("forecast input must end at t = 0");
    }
    auto [series, absent] = densify(file, window);
    if (!absent.empty()) {
      throw GeometryError("forecast input has gaps; first absent index " +
                          format_index(absent.front(), 1));
    }
    past = std::move(series);
  }

  ForecastSpec spec{past, f.horizon, f.gap, f.outer, std::nullopt,
                    Band(BandLimit::fraction_of_pi(f.omega)), f.solver.rho, f.solver.config()};
  if (f.dummy != "zero") {
    if (f.dummy == "truth") {
      if (!demo) {
        throw ParameterError("--dummy truth is only available for the synthetic demo past");
      }
      spec.dummy = demo->sample(IndexWindow::one_d(f.gap + 1, f.outer));
    } else {
      const SeriesFile file = load_series(f.dummy);
      if (file.dims != 1) {
        throw GeometryError("dummy forecast must be one-dimensional");
      }
      auto [series, absent] = densify(file, bounding_window(file));
      if (!absent.empty()) {
        throw GeometryError("dummy forecast has gaps");
      }
      spec.dummy = std::move(series);
    }
  }
  const ForecastResult result = forecast(spec);
  for (const std::string& w : result.solution.warnings) {
    err << "warning: " << w << '\n';
  }

  json config = solver_json(f.solver);
  config["input"] = f.input.empty() ? json(nullptr) : json(f.input);
  config["dummy"] = f.dummy;
  config["horizon"] = f.horizon;
  config["gap"] = f.gap;
  config["n"] = f.outer;
  config["q"] = -past.window().lo()[0];
  config["omega"] = f.omega;
  if (demo) {
    config["demo"] = {{"seed", f.seed}, {"signal_band", f.signal_band}, {"rng", kRngName}};
  }
  json head = header("forecast", std::move(config));

  // Plot rows: observed past, dummy, accepted forecast, rest of the gap and,
  // for the demo, the hidden truth.
  struct PlotRow {
    std::int64_t t;
    double value;
    const char* tag;
  };
  std::vector<PlotRow> plot;
  for (std::int64_t t = past.window().lo()[0]; t <= 0; ++t) {
    plot.push_back({t, past.at(Index{t, 0}), "observed"});
  }
  for (int t = 1; t <= f.gap; ++t) {
    plot.push_back({t, result.full_gap[static_cast<std::size_t>(t - 1)],
                    t <= f.horizon ? "forecast" : "gap"});
  }
  for (int t = f.gap + 1; t <= f.outer; ++t) {
    plot.push_back({t, spec.dummy ? spec.dummy->at(Index{t, 0}) : 0.0, "dummy"});
  }
  if (demo) {
    for (int t = 1; t <= f.outer; ++t) {
      plot.push_back({t, (*demo)(t), "truth"});
    }
  }

  if (f.output.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(head);
    s << "# diagnostics " << diagnostics_json(result.solution.diagnostics).dump() << '\n';
    s << "t,value,series\n";
    for (const PlotRow& r : plot) {
      s << r.t << ',' << fmt(r.value) << ',' << r.tag << '\n';
    }
    emit(f.output, out, s.str());
    return;
  }
  head["values"] = result.values;
  head["full_gap"] = result.full_gap;
  head["diagnostics"] = diagnostics_json(result.solution.diagnostics);
  head["solve"] = report_json(result.solution.report);
  head["warnings"] = result.solution.warnings;
  json rows = json::array();
  for (const PlotRow& r : plot) {
    rows.push_back({{"t", r.t}, {"value", r.value}, {"series", r.tag}});
  }
  head["plot"] = std::move(rows);
  emit(f.output, out, head.dump(2) + "\n");
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseFlags {
  std::string missing;
  std::string gap_sizes;
  std::string export_matrix;
  double omega = 0.25;
  std::optional<double> omega2;
  int dims = 1;
  OutputFlags output;
};

void cmd_diagnose(const DiagnoseFlags& f, std::ostream& out) {
  json config{{"omega", f.omega}, {"dims", f.dims}};

  if (!f.gap_sizes.empty()) {
    if (f.dims != 1) {
      throw ParameterError("--gap-sizes sweeps are one-dimensional");
    }
    const auto sizes = parse_index_set(f.gap_sizes, 1);
    if (sizes.empty()) {
      throw ParseError("--gap-sizes selects nothing");
    }
    config["gap_sizes"] = f.gap_sizes;
    const Band band(BandLimit::fraction_of_pi(f.omega));
    json rows = json::array();
    std::ostringstream csv;
    csv << "m,spectral_norm,min_eig_I_minus_A\n";
    for (const Index& s : sizes) {
      const std::int64_t m = s[0];
      if (m < 1) {
        throw ParameterError("gap sizes must be positive");
      }
      std::vector<Index> missing;
      for (std::int64_t t = 1; t <= m; ++t) {
        missing.push_back(Index{t, 0});
      }
      const auto d =
          diagnostics(assemble_operator(make_mask(IndexWindow::one_d(1, m), missing), band));
      rows.push_back({{"m", m},
                      {"spectral_norm", d.spectral_norm},
                      {"min_eig_I_minus_A", d.min_eig_I_minus_A}});
      csv << m << ',' << fmt(d.spectral_norm) << ',' << fmt(d.min_eig_I_minus_A) << '\n';
    }
    json head = header("diagnose", std::move(config));
    if (f.output.format == "csv") {
      emit(f.output, out, csv_preamble(head) + csv.str());
    } else {
      head["sweep"] = std::move(rows);
      emit(f.output, out, head.dump(2) + "\n");
    }
    return;
  }

  const std::vector<Index> missing = parse_index_set(f.missing, f.dims);
  if (missing.empty()) {
    throw GeometryError("--missing selects no indices");
  }
  IndexWindow window = IndexWindow::one_d(0, 0);
  {
    SeriesFile empty;
    empty.dims = f.dims;
    window = bounding_window(empty, missing);
  }
  const GapOperator op =
      assemble_operator(make_mask(window, missing), make_band(f.omega, f.omega2, f.dims));
  const OperatorDiagnostics d = diagnostics(op);
  if (!f.export_matrix.empty()) {
    std::ofstream file(f.export_matrix);
    if (!file) {
      throw ParseError("cannot open matrix export file '" + f.export_matrix + "'");
    }
    write_operator_csv(file, op);
  }

  config["missing"] = f.missing;
  if (f.dims == 2) {
    config["omega2"] = f.omega2.value_or(f.omega);
  }
  json head = header("diagnose", std::move(config));
  std::vector<double> spectrum(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
  if (f.output.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(head);
    s << "# diagnostics " << diagnostics_json(d).dump() << '\n';
    s << "k,eigenvalue\n";
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      s << k << ',' << fmt(spectrum[k]) << '\n';
    }
    emit(f.output, out, s.str());
    return;
  }
  head["diagnostics"] = diagnostics_json(d);
  head["spectrum"] = spectrum;
  emit(f.output, out, head.dump(2) + "\n");
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string config_path;
  OutputFlags output;
};

void cmd_simulate(const SimulateFlags& f, std::ostream& out) {
  std::ifstream in(f.config_path);
  if (!in) {
    throw ParseError("cannot open config file '" + f.config_path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  const ExperimentConfig config = experiment_config_from_json(doc);
  const ExperimentReport report = run_experiment(config);

  json head = header("simulate", doc);
  head["effective_config"] = to_json(config);
  if (f.output.format == "csv") {
    std::ostringstream s;
    s << csv_preamble(head);
    write_csv(s, report);
    emit(f.output, out, s.str());
    return;
  }
  json body = to_json(report);
  for (auto& [key, value] : body.items()) {
    if (key != "config") {
      head[key] = value;
    }
  }
  emit(f.output, out, head.dump(2) + "\n");
}

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::parse:
    case ErrorCategory::parameter:
      return kParseError;
    case ErrorCategory::geometry:
      return kGeometryError;
    case ErrorCategory::numeric:
    case ErrorCategory::solver:
      return kSolverError;
  }
  return kInternal;
}

void report_error(std::ostream& err, std::string_view category, const std::string& message) {
  err << json{{"error", {{"category", category}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band-limited recovery of missing samples and short-horizon forecasting",
               "bandfill"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RecoverFlags rf;
  auto* recover_cmd = app.add_subcommand("recover", "Fill missing samples of a 1D or 2D series");
  recover_cmd->add_option("--input,-i", rf.input, "Series CSV (t,value or t1,t2,value)")
      ->required();
  recover_cmd->add_option("--missing,-m", rf.missing, "Missing set, e.g. \"1..12\" or \"-1..1 x -1..1\"")
      ->required();
  recover_cmd->add_option("--omega", rf.omega, "Band limit as a fraction of pi");
  recover_cmd->add_option("--omega2", rf.omega2, "Second-axis band limit for 2D input");
  add_solver_flags(*recover_cmd, rf.solver);
  add_output_flags(*recover_cmd, rf.output);

  ForecastFlags ff;
  auto* forecast_cmd = app.add_subcommand("forecast", "Forecast by interpolating towards a dummy");
  forecast_cmd->add_option("--input,-i", ff.input,
                           "Past series CSV ending at t = 0 (default: seeded synthetic past)");
  forecast_cmd->add_option("--dummy", ff.dummy, "zero | truth | <csv covering gap+1..n>");
  forecast_cmd->add_option("--horizon", ff.horizon, "Accepted forecast length");
  forecast_cmd->add_option("--gap", ff.gap, "Length of the interpolated range 1..gap");
  forecast_cmd->add_option("--n", ff.outer, "Outer truncation bound; dummy spans gap+1..n");
  forecast_cmd->add_option("--past", ff.past, "Synthetic past length q (demo only)");
  forecast_cmd->add_option("--seed", ff.seed, "Synthetic past seed (demo only)");
  forecast_cmd->add_option("--signal-band", ff.signal_band,
                           "Synthetic past band as a fraction of pi (demo only)");
  forecast_cmd->add_option("--omega", ff.omega, "Band limit as a fraction of pi");
  add_solver_flags(*forecast_cmd, ff.solver);
  add_output_flags(*forecast_cmd, ff.output);

  DiagnoseFlags df;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Spectrum of the gap operator");
  diagnose_cmd->add_option("--missing,-m", df.missing, "Missing set");
  diagnose_cmd->add_option("--gap-sizes", df.gap_sizes, "Sweep M = {1..m} over these m, e.g. 1..20");
  diagnose_cmd->add_option("--omega", df.omega, "Band limit as a fraction of pi");
  diagnose_cmd->add_option("--omega2", df.omega2, "Second-axis band limit (2D)");
  diagnose_cmd->add_option("--dims", df.dims, "Index dimensionality")->check(CLI::Range(1, 2));
  diagnose_cmd->add_option("--export-matrix", df.export_matrix, "Write A as CSV to this path");
  add_output_flags(*diagnose_cmd, df.output);

  SimulateFlags sf;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  simulate_cmd->add_option("--config,-c", sf.config_path, "Experiment JSON")->required();
  add_output_flags(*simulate_cmd, sf.output);

  std::vector<const char*> argv{"bandfill"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "parse", e.what());
    return kParseError;
  }

  try {
    if (*recover_cmd) {
      cmd_recover(rf, out, err);
    } else if (*forecast_cmd) {
      cmd_forecast(ff, out, err);
    } else if (*diagnose_cmd) {
      if (!df.missing.empty() && !df.gap_sizes.empty()) {
        throw ParameterError("diagnose takes --missing or --gap-sizes, not both");
      }
      if (df.missing.empty() && df.gap_sizes.empty()) {
        throw GeometryError("diagnose needs a mask: give --missing or --gap-sizes");
      }
      cmd_diagnose(df, out);
    } else if (*simulate_cmd) {
      cmd_simulate(sf, out);
    }
  } catch (const Error& e) {
    report_error(err, to_string(e.category()), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kInternal;
  }
  return kOk;
}

}  // namespace bandfill::cli
