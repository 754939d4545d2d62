#include "bandfill/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "bandfill/error.hpp"

namespace bandfill {

void ForecastSpec::validate() const {
  if (band.dims() != 1) {
    throw ParameterError("forecasting needs a 1D band");
  }
  if (past.window().dims() != 1 || past.window().hi()[0] != 0 || past.window().lo()[0] > -1) {
    throw GeometryError("past must be a 1D series on [-q, 0] with q >= 1");
  }
  if (horizon < 1) {
    throw ParameterError("forecast horizon must be at least 1");
  }
  if (gap <= horizon) {
    throw ParameterError("gap must exceed the forecast horizon");
  }
  if (outer <= gap) {
    throw ParameterError("outer truncation bound must exceed the gap");
  }
  if (dummy) {
    const IndexWindow& w = dummy->window();
    if (w.dims() != 1 || w.lo()[0] > gap + 1 || w.hi()[0] < outer) {
      throw GeometryError("dummy forecast must cover [gap + 1, outer]");
    }
  }
  if (rho && !(*rho >= 0.0)) {
    throw ParameterError("rho must be non-negative");
  }
}

ForecastResult forecast(const ForecastSpec& spec) {
  spec.validate();
  const std::int64_t q = -spec.past.window().lo()[0];
  const auto window = IndexWindow::one_d(-q, spec.outer);

  Series observed(window);
  for (std::int64_t t = -q; t <= 0; ++t) {
    observed.at(Index{t, 0}) = spec.past.at(Index{t, 0});
  }
  if (spec.dummy) {
    for (std::int64_t t = spec.gap + 1; t <= spec.outer; ++t) {
      observed.at(Index{t, 0}) = spec.dummy->at(Index{t, 0});
    }
  }

  std::vector<Index> missing;
  missing.reserve(static_cast<std::size_t>(spec.gap));
  for (std::int64_t t = 1; t <= spec.gap; ++t) {
    missing.push_back(Index{t, 0});
  }

  ForecastResult result;
  result.solution = recover(RecoveryProblem{std::move(observed), make_mask(window, missing),
                                            spec.band, spec.rho, spec.solver});
  result.full_gap.reserve(result.solution.values.size());
  for (const auto& entry : result.solution.values) {
    result.full_gap.push_back(entry.second);
  }
  result.values.assign(result.full_gap.begin(), result.full_gap.begin() + spec.horizon);
  return result;
}

SensitivityReport dummy_sensitivity(const Series& past, int horizon,
                                    const std::vector<Series>& dummies,
                                    const std::vector<int>& gaps, int outer, const Band& band,
                                    std::optional<double> rho) {
  if (dummies.size() < 2) {
    throw ParameterError("sensitivity needs at least two dummy forecasts");
  }
  if (gaps.empty() || !std::is_sorted(gaps.begin(), gaps.end()) ||
      std::adjacent_find(gaps.begin(), gaps.end()) != gaps.end()) {
    throw ParameterError("gap list must be non-empty and strictly increasing");
  }

  SensitivityReport report;
  for (int gap : gaps) {
    std::vector<std::vector<double>> forecasts;
    forecasts.reserve(dummies.size());
    for (const Series& dummy : dummies) {
      ForecastSpec spec{past, horizon, gap, outer, dummy, band, rho, {}};
      forecasts.push_back(forecast(spec).values);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
      for (std::size_t j = i + 1; j < forecasts.size(); ++j) {
        for (std::size_t k = 0; k < forecasts[i].size(); ++k) {
          worst = std::max(worst, std::abs(forecasts[i][k] - forecasts[j][k]));
        }
      }
    }
    if (!report.rows.empty() && worst > report.rows.back().max_pairwise_distance) {
      ++report.increases;
      report.non_increasing = false;
    }
    report.rows.push_back(SensitivityRow{gap, worst});
  }
  return report;
}

}  // namespace bandfill
