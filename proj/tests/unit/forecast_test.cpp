#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bandfill/error.hpp"
#include "bandfill/forecast.hpp"
#include "bandfill/lab.hpp"
#include "test_util.hpp"

namespace bandfill {
namespace {

BandLimitedSignal seeded_signal(std::uint64_t seed) {
  Rng rng(seed);
  return BandLimitedSignal(random_sinc_mixture(BandLimit::fraction_of_pi(0.2),
                                               IndexWindow::one_d(-60, 60), 6, -60.0, 10.0, rng));
}

ForecastSpec continuation_spec(const BandLimitedSignal& x) {
  ForecastSpec spec{x.sample(IndexWindow::one_d(-60, 0))};
  spec.dummy = x.sample(IndexWindow::one_d(13, 60));
  return spec;
}

TEST(Forecast, ZeroPastAndZeroDummyGiveZero) {
  ForecastSpec spec{Series(IndexWindow::one_d(-60, 0))};
  const auto result = forecast(spec);
  ASSERT_EQ(result.values.size(), 3u);
  ASSERT_EQ(result.full_gap.size(), 12u);
  for (double v : result.full_gap) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(Forecast, ValuesArePrefixOfGap) {
  const auto result = forecast(continuation_spec(seeded_signal(3)));
  ASSERT_EQ(result.values.size(), 3u);
  EXPECT_TRUE(std::equal(result.values.begin(), result.values.end(), result.full_gap.begin()));
  EXPECT_EQ(result.solution.values.front().first, (Index{1, 0}));
  EXPECT_EQ(result.solution.values.back().first, (Index{12, 0}));
}

TEST(Forecast, ValidationErrors) {
  const Series past = test::random_series(IndexWindow::one_d(-60, 0), 1);
  ForecastSpec spec{past};
  spec.horizon = 12;
  EXPECT_THROW(forecast(spec), ParameterError);
  spec = ForecastSpec{past};
  spec.outer = 12;
  EXPECT_THROW(forecast(spec), ParameterError);
  spec = ForecastSpec{past};
  spec.dummy = Series(IndexWindow::one_d(13, 40));
  EXPECT_THROW(forecast(spec), GeometryError);
  spec = ForecastSpec{test::random_series(IndexWindow::one_d(-60, 1), 1)};
  EXPECT_THROW(forecast(spec), GeometryError);
}

// Per-instance accuracy depends on how much of the signal lies outside
// [-60, 60]; over seeded instances the typical error is well inside 5e-2
// of the signal's peak on the window.
TEST(Forecast, TrueContinuationDummyTracksSignal) {
  std::vector<double> errors;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto x = seeded_signal(seed);
    const auto result = forecast(continuation_spec(x));
    double peak = 0.0;
    for (std::int64_t t = -60; t <= 60; ++t) {
      peak = std::max(peak, std::abs(x(t)));
    }
    double err = 0.0;
    for (int k = 0; k < 3; ++k) {
      err = std::max(err, std::abs(result.values[static_cast<std::size_t>(k)] - x(k + 1)));
    }
    errors.push_back(err / peak);
  }
  std::sort(errors.begin(), errors.end());
  EXPECT_LE(errors[errors.size() / 2], 5e-2);
}

TEST(DummySensitivity, NearGapLessSensitiveThanFarGap) {
  double near = 0.0;
  double far = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = seeded_signal(seed);
    ForecastSpec with_truth = continuation_spec(x);
    ForecastSpec with_zero = with_truth;
    with_zero.dummy.reset();
    const auto a = forecast(with_truth).full_gap;
    const auto b = forecast(with_zero).full_gap;
    for (int k = 0; k < 3; ++k) {
      near += std::abs(a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]);
      far += std::abs(a[static_cast<std::size_t>(k + 9)] - b[static_cast<std::size_t>(k + 9)]);
    }
  }
  EXPECT_LT(near, far);
}

TEST(DummySensitivity, ReportShape) {
  const auto x = seeded_signal(5);
  const std::vector<Series> dummies{Series(IndexWindow::one_d(5, 60)),
                                    x.sample(IndexWindow::one_d(5, 60))};
  const auto report = dummy_sensitivity(x.sample(IndexWindow::one_d(-60, 0)), 3, dummies,
                                        {4, 8, 12, 16}, 60, Band(BandLimit::fraction_of_pi(0.25)),
                                        std::nullopt);
  ASSERT_EQ(report.rows.size(), 4u);
  int increases = 0;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_GE(report.rows[i].max_pairwise_distance, 0.0);
    if (i > 0 && report.rows[i].max_pairwise_distance > report.rows[i - 1].max_pairwise_distance) {
      ++increases;
    }
  }
  EXPECT_EQ(report.increases, increases);
  EXPECT_EQ(report.non_increasing, increases == 0);
}

TEST(DummySensitivity, IdenticalDummiesGiveZeroDistance) {
  const auto x = seeded_signal(6);
  const Series d = x.sample(IndexWindow::one_d(5, 60));
  const auto report =
      dummy_sensitivity(x.sample(IndexWindow::one_d(-60, 0)), 3, {d, d}, {4, 8}, 60,
                        Band(BandLimit::fraction_of_pi(0.25)), 0.0);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.max_pairwise_distance, 0.0);
  }
  EXPECT_TRUE(report.non_increasing);
}

TEST(DummySensitivity, Errors) {
  const Series past = test::random_series(IndexWindow::one_d(-60, 0), 1);
  const Band band(BandLimit::fraction_of_pi(0.25));
  const Series d(IndexWindow::one_d(5, 60));
  EXPECT_THROW(dummy_sensitivity(past, 3, {d}, {4, 8}, 60, band, 0.0), ParameterError);
  EXPECT_THROW(dummy_sensitivity(past, 3, {d, d}, {8, 4}, 60, band, 0.0), ParameterError);
}

}  // namespace
}  // namespace bandfill
