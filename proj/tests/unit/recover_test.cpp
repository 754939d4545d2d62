#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bandfill/error.hpp"
#include "bandfill/lab.hpp"
#include "bandfill/recover.hpp"
#include "test_util.hpp"

namespace bandfill {
namespace {

constexpr double kPi = std::numbers::pi;

RecoveryProblem problem_1d(Series series, std::vector<Index> missing, double fraction,
                           std::optional<double> rho = 0.0) {
  const IndexWindow w = series.window();
  return RecoveryProblem{std::move(series), make_mask(w, missing),
                         Band(BandLimit::fraction_of_pi(fraction)), rho, SolverConfig{}};
}

BandLimitedSignal test_signal(double band_fraction) {
  SignalSpec spec;
  spec.band = BandLimit::fraction_of_pi(band_fraction);
  spec.centers = {-6.5, -1.0, 2.25, 4.0, 9.75};
  spec.amplitudes = {1.2, -0.7, 2.0, 0.9, -1.4};
  return BandLimitedSignal(spec);
}

double max_rel_error(const RecoverySolution& sol, const BandLimitedSignal& x) {
  double err = 0.0;
  double scale = 0.0;
  for (const auto& [t, v] : sol.values) {
    err = std::max(err, std::abs(v - x(t[0])));
    scale = std::max(scale, std::abs(x(t[0])));
  }
  return err / scale;
}

TEST(Recover, ZeroObservedGivesZero) {
  const auto w = IndexWindow::one_d(-20, 20);
  const auto sol = recover(problem_1d(Series(w), test::range_1d(1, 5), 0.25));
  ASSERT_EQ(sol.values.size(), 5u);
  for (const auto& [t, v] : sol.values) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(Recover, EmptyMissingSetIsGeometryError) {
  const auto w = IndexWindow::one_d(-5, 5);
  EXPECT_THROW(recover(problem_1d(Series(w), {}, 0.25)), GeometryError);
}

TEST(Recover, NegativeRhoIsParameterError) {
  const auto w = IndexWindow::one_d(-5, 5);
  EXPECT_THROW(recover(problem_1d(test::random_series(w, 1), {{0, 0}}, 0.25, -1.0)),
               ParameterError);
}

TEST(Recover, BandLimitedSignalOnLargeWindow) {
  const auto x = test_signal(0.2);
  const auto series = x.sample(IndexWindow::one_d(-500, 500));
  const auto sol = recover(problem_1d(series, test::range_1d(1, 5), 0.25));
  EXPECT_LE(max_rel_error(sol, x), 1e-3);
  EXPECT_TRUE(sol.warnings.empty());
}

TEST(Recover, ErrorShrinksWithWindow) {
  const auto x = test_signal(0.2);
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t half : {250, 500, 1000}) {
    const auto sol =
        recover(problem_1d(x.sample(IndexWindow::one_d(-half, half)), test::range_1d(1, 5), 0.25));
    const double err = max_rel_error(sol, x);
    EXPECT_LT(err, prev) << "half width " << half;
    prev = err;
  }
}

TEST(Recover, SingletonMatchesClosedForm) {
  for (double f : {0.1, 0.25, 0.5, 0.9}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto series = test::random_series(IndexWindow::one_d(-60, 60), seed);
      const double closed = recover_single_value(series, 0, BandLimit::fraction_of_pi(f));
      const auto sol = recover(problem_1d(series, {{0, 0}}, f));
      EXPECT_NEAR(sol.values[0].second, closed, 1e-12) << "f=" << f << " seed=" << seed;
    }
  }
}

TEST(RecoverSingleValue, IgnoresStoredValueAndBounded) {
  Series series = test::random_series(IndexWindow::one_d(-40, 40), 3);
  const auto band = BandLimit::fraction_of_pi(0.3);
  const double v = recover_single_value(series, 5, band);
  series.at(Index{5, 0}) = 1e9;
  EXPECT_EQ(recover_single_value(series, 5, band), v);
  series.at(Index{5, 0}) = 0.0;
  double norm = 0.0;
  for (double s : series.values()) {
    norm += s * s;
  }
  EXPECT_LE(std::abs(v), 0.3 / 0.7 * std::sqrt(norm));
}

// For x = h on D the closed form returns h(0) up to the window tail.
TEST(RecoverSingleValue, ReproducesKernelPeak) {
  const double omega = 0.25 * kPi;
  const auto w = IndexWindow::one_d(-2000, 2000);
  Series x(w);
  for (std::int64_t t = -2000; t <= 2000; ++t) {
    x.at(Index{t, 0}) = test::h_ref(omega, static_cast<double>(t));
  }
  EXPECT_NEAR(recover_single_value(x, 0, BandLimit(omega)), 0.25, 1e-3);
}

TEST(RecoverSingleValue, Errors) {
  const Series series = test::random_series(IndexWindow::one_d(-3, 3), 1);
  EXPECT_THROW(recover_single_value(series, 4, BandLimit::fraction_of_pi(0.2)), GeometryError);
}

TEST(Recover, HalfLineWarning) {
  const auto w = IndexWindow::one_d(-4, 4);
  std::vector<Index> ends{{-4, 0}, {4, 0}};
  const auto sol = recover(problem_1d(test::random_series(w, 2), ends, 0.25));
  ASSERT_FALSE(sol.warnings.empty());
  EXPECT_NE(sol.warnings.front().find("half-line"), std::string::npos);
}

TEST(Recover, DefaultRhoFollowsGapSize) {
  const auto w = IndexWindow::one_d(-100, 100);
  const auto series = test::random_series(w, 4);
  EXPECT_EQ(recover(problem_1d(series, test::range_1d(1, 3), 0.25, std::nullopt)).report.rho,
            0.0);
  EXPECT_EQ(recover(problem_1d(series, test::range_1d(1, 40), 0.25, std::nullopt)).report.rho,
            kLargeGapRho);
}

TEST(Recover, IllConditionedDefaultRetriesWithRho) {
  const auto w = IndexWindow::one_d(-100, 100);
  auto problem = problem_1d(test::random_series(w, 5), test::range_1d(1, 20), 0.25, std::nullopt);
  problem.solver.condition_warn_threshold = 1e-3;
  const auto sol = recover(problem);
  EXPECT_EQ(sol.report.rho, kLargeGapRho);
  EXPECT_FALSE(sol.warnings.empty());
}

TEST(Recover, NeumannAndDirectAgree) {
  const auto series = test::random_series(IndexWindow::one_d(-60, 60), 6);
  auto problem = problem_1d(series, test::range_1d(1, 12), 0.25, 0.01);
  const auto direct = recover(problem);
  problem.solver.method = SolveMethod::neumann;
  const auto neumann = recover(problem);
  EXPECT_LE((direct.vector() - neumann.vector()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Recover2d, SingleRowMatchesOneDimensional) {
  const auto w1 = IndexWindow::one_d(-200, 200);
  const auto row = test::random_series(w1, 7);
  const auto w2 = IndexWindow::two_d(Index{-200, 0}, Index{200, 0});
  Series field(w2, std::vector<double>(row.values().begin(), row.values().end()));
  const Band band(BandLimit::fraction_of_pi(0.25), BandLimit::fraction_of_pi(0.6));
  const RecoveryProblem problem{field, make_mask(w2, std::vector<Index>{{0, 0}}), band, 0.0,
                                SolverConfig{}};
  const auto sol = recover_2d(problem);
  EXPECT_NEAR(sol.value_at(Index{0, 0}),
              recover_single_value(row, 0, BandLimit::fraction_of_pi(0.25)), 1e-10);
}

TEST(Recover2d, SeparableFieldBlock) {
  const double omega1 = 0.2 * kPi;
  const double omega2 = 0.2 * kPi;
  const auto w = IndexWindow::two_d(Index{-200, -200}, Index{200, 200});
  Series field(w);
  for (std::size_t off = 0; off < w.size(); ++off) {
    const Index t = w.index_at(off);
    field.values()[off] = test::h_ref(omega1, static_cast<double>(t[0])) *
                          test::h_ref(omega2, static_cast<double>(t[1]));
  }
  const auto mask = make_mask(w, parse_index_set("-1..1 x -1..1", 2));
  const Band band(BandLimit::fraction_of_pi(0.25), BandLimit::fraction_of_pi(0.25));
  const auto sol = recover_2d(RecoveryProblem{field, mask, band, 0.0, SolverConfig{}});
  ASSERT_EQ(sol.values.size(), 9u);
  double err = 0.0;
  double scale = 0.0;
  for (const auto& [t, v] : sol.values) {
    const double truth = field.at(t);
    err = std::max(err, std::abs(v - truth));
    scale = std::max(scale, std::abs(truth));
  }
  EXPECT_LE(err / scale, 1e-2);
}

TEST(Recover2d, RejectsOneDimensionalInput) {
  const auto series = test::random_series(IndexWindow::one_d(-5, 5), 1);
  EXPECT_THROW(recover_2d(problem_1d(series, {{0, 0}}, 0.25)), GeometryError);
}

TEST(Recover, MixedDimensionsRejected) {
  const auto w = IndexWindow::one_d(-5, 5);
  const RecoveryProblem problem{test::random_series(w, 1),
                                make_mask(w, std::vector<Index>{{0, 0}}),
                                Band(BandLimit::fraction_of_pi(0.2), BandLimit::fraction_of_pi(0.2)),
                                0.0, SolverConfig{}};
  EXPECT_THROW(recover(problem), GeometryError);
}

}  // namespace
}  // namespace bandfill
