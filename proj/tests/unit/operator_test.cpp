#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "bandfill/error.hpp"
#include "bandfill/operator.hpp"
#include "test_util.hpp"

namespace bandfill {
namespace {

constexpr double kPi = std::numbers::pi;

using Mat3 = std::array<std::array<double, 3>, 3>;

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Roots of det(m - lambda I) located by a sign scan on [-2, 2] and refined by
// bisection.
std::vector<double> char_poly_roots(const Mat3& m) {
  const auto p = [&](double lambda) {
    Mat3 s = m;
    for (int i = 0; i < 3; ++i) {
      s[i][i] -= lambda;
    }
    return det3(s);
  };
  std::vector<double> roots;
  constexpr int kSteps = 40'000;
  double prev_x = -2.0;
  double prev_p = p(prev_x);
  for (int k = 1; k <= kSteps; ++k) {
    const double x = -2.0 + 4.0 * k / kSteps;
    const double px = p(x);
    if (px == 0.0) {
      roots.push_back(x);
    } else if ((prev_p < 0.0) != (px < 0.0) && prev_p != 0.0) {
      double lo = prev_x;
      double hi = x;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((p(lo) < 0.0) == (p(mid) < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_p = px;
  }
  return roots;
}

Mat3 example_matrix(double omega) {
  const double d = omega / kPi;
  const double s1 = std::sin(omega) / omega;
  const double s2 = std::sin(2 * omega) / (2 * omega);
  return Mat3{{{d, d * s1, d * s2}, {d * s1, d, d * s1}, {d * s2, d * s1, d}}};
}

GapOperator op_for(std::vector<Index> missing, const IndexWindow& window, double fraction) {
  return assemble_operator(make_mask(window, missing), Band(BandLimit::fraction_of_pi(fraction)));
}

TEST(AssembleOperator, SingletonIsOmegaOverPi) {
  const auto op = op_for({{0, 0}}, IndexWindow::one_d(-5, 5), 0.25);
  ASSERT_EQ(op.matrix.rows(), 1);
  EXPECT_DOUBLE_EQ(op.matrix(0, 0), 0.25);
}

TEST(AssembleOperator, ThreePointMatrixAnyOmega) {
  for (int k = 1; k <= 9; ++k) {
    const double f = 0.1 * k;
    const auto op = op_for(test::range_1d(0, 2), IndexWindow::one_d(-5, 5), f);
    const Mat3 ref = example_matrix(f * kPi);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(op.matrix(i, j), ref[i][j], 1e-15) << "f=" << f;
      }
    }
  }
}

TEST(AssembleOperator, ThreePointMatrixHalfBand) {
  const auto op = op_for(test::range_1d(0, 2), IndexWindow::one_d(-5, 5), 0.5);
  const double c = 2.0 / kPi;
  const double ref[3][3] = {{1, c, 0}, {c, 1, c}, {0, c, 1}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(op.matrix(i, j), 0.5 * ref[i][j], 1e-16);
    }
  }
}

TEST(AssembleOperator, EmptyMissingSetIsGeometryError) {
  EXPECT_THROW(op_for({}, IndexWindow::one_d(-5, 5), 0.25), GeometryError);
}

TEST(AssembleOperator, DimensionMismatchIsGeometryError) {
  const auto mask = make_mask(IndexWindow::one_d(-5, 5), std::vector<Index>{{0, 0}});
  const Band two(BandLimit::fraction_of_pi(0.2), BandLimit::fraction_of_pi(0.2));
  EXPECT_THROW(assemble_operator(mask, two), GeometryError);
}

TEST(AssembleOperator, SymmetricWithConstantDiagonal) {
  const auto w = IndexWindow::two_d(Index{-4, -4}, Index{4, 4});
  const auto mask = make_mask(w, parse_index_set("(-1..1 x -1..1),(3 x -4),(-4 x 2)", 2));
  const Band band(BandLimit::fraction_of_pi(0.3), BandLimit::fraction_of_pi(0.6));
  const auto op = assemble_operator(mask, band);
  EXPECT_EQ((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    EXPECT_DOUBLE_EQ(op.matrix(i, i), 0.3 * 0.6);
  }
}

TEST(AssembleRhs, ZeroSeriesGivesZero) {
  const auto w = IndexWindow::one_d(-10, 10);
  const auto mask = make_mask(w, test::range_1d(-2, 3));
  const auto rhs = assemble_rhs(Series(w), mask, Band(BandLimit::fraction_of_pi(0.25)));
  EXPECT_EQ(rhs.size(), 6);
  EXPECT_EQ(rhs.cwiseAbs().maxCoeff(), 0.0);
}

TEST(AssembleRhs, UnitImpulse) {
  const auto w = IndexWindow::one_d(-5, 5);
  Series x(w);
  x.at(Index{3, 0}) = 1.0;
  const auto rhs = assemble_rhs(x, make_mask(w, std::vector<Index>{{0, 0}}),
                                Band(BandLimit::fraction_of_pi(0.25)));
  // 0.25 * sin(0.75 pi) / (0.75 pi)
  EXPECT_NEAR(rhs[0], 0.25 * std::sin(0.75 * kPi) / (0.75 * kPi), 1e-16);
  EXPECT_NEAR(rhs[0], 0.0750263, 1e-7);
}

TEST(AssembleRhs, IgnoresValuesOnMissingSet) {
  const auto w = IndexWindow::one_d(-8, 8);
  const auto mask = make_mask(w, test::range_1d(0, 2));
  const Band band(BandLimit::fraction_of_pi(0.4));
  Series x = test::random_series(w, 3);
  const auto before = assemble_rhs(x, mask, band);
  x.at(Index{1, 0}) = 1e6;
  EXPECT_EQ(assemble_rhs(x, mask, band), before);
}

TEST(AssembleRhs, NonFiniteObservedValueIsNumericError) {
  const auto w = IndexWindow::one_d(-3, 3);
  Series x(w);
  x.at(Index{2, 0}) = std::nan("");
  EXPECT_THROW(assemble_rhs(x, make_mask(w, std::vector<Index>{{0, 0}}),
                            Band(BandLimit::fraction_of_pi(0.25))),
               NumericError);
}

TEST(AssembleRhs, LinearInSeries) {
  const auto w = IndexWindow::one_d(-30, 30);
  const auto mask = make_mask(w, test::range_1d(-3, 4));
  const Band band(BandLimit::fraction_of_pi(0.35));
  const Series x1 = test::random_series(w, 11);
  const Series x2 = test::random_series(w, 12);
  Series combo(w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    combo.values()[i] = 2.5 * x1.values()[i] - 0.75 * x2.values()[i];
  }
  const Eigen::VectorXd expected =
      2.5 * assemble_rhs(x1, mask, band) - 0.75 * assemble_rhs(x2, mask, band);
  EXPECT_LE((assemble_rhs(combo, mask, band) - expected).cwiseAbs().maxCoeff(), 1e-13);
}

// With x = h observed everywhere except 0, sum_{m != 0} h(m) h(-m) equals
// h(0) - h(0)^2 = (pi - omega)/pi * h(0).
TEST(AssembleRhs, KernelSelfConvolutionIdentity) {
  const double omega = 0.25 * kPi;
  const auto w = IndexWindow::one_d(-2000, 2000);
  Series x(w);
  for (std::int64_t t = -2000; t <= 2000; ++t) {
    x.at(Index{t, 0}) = test::h_ref(omega, static_cast<double>(t));
  }
  const auto rhs = assemble_rhs(x, make_mask(w, std::vector<Index>{{0, 0}}),
                                Band(BandLimit(omega)));
  EXPECT_NEAR(rhs[0], 0.1875, 1e-3);
}

TEST(TruncateOperator, NoOpWhenMaskInside) {
  const auto op = op_for(test::range_1d(-3, 3), IndexWindow::one_d(-10, 10), 0.25);
  EXPECT_EQ(truncate_operator(op, 3).matrix, op.matrix);
  EXPECT_EQ(truncate_operator(op, 100).matrix, op.matrix);
}

TEST(TruncateOperator, ZeroesOutsideRowsAndColumns) {
  const auto w = IndexWindow::one_d(-20, 20);
  const auto mask = make_mask(w, test::range_1d(0, 12));
  const Band band(BandLimit::fraction_of_pi(0.25));
  const auto op = assemble(test::random_series(w, 9), mask, band);
  const auto cut = truncate_operator(op, 5);
  for (Eigen::Index i = 0; i < 13; ++i) {
    for (Eigen::Index j = 0; j < 13; ++j) {
      if (i <= 5 && j <= 5) {
        EXPECT_EQ(cut.matrix(i, j), op.matrix(i, j));
      } else {
        EXPECT_EQ(cut.matrix(i, j), 0.0);
      }
    }
  }
  EXPECT_EQ(cut.rhs, op.rhs);
  EXPECT_EQ(cut.order, op.order);
}

TEST(TruncateOperator, NegativeBoundIsParameterError) {
  const auto op = op_for({{0, 0}}, IndexWindow::one_d(-1, 1), 0.25);
  EXPECT_THROW(truncate_operator(op, -1), ParameterError);
}

TEST(TruncateOperator, NormDoesNotIncrease) {
  boost::random::mt19937_64 rng(5);
  boost::random::uniform_int_distribution<std::int64_t> pos(-30, 30);
  boost::random::uniform_int_distribution<int> count(1, 25);
  boost::random::uniform_int_distribution<int> band_step(1, 19);
  boost::random::uniform_int_distribution<std::int64_t> cut(0, 30);
  const auto w = IndexWindow::one_d(-30, 30);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Index> missing;
    const int n = count(rng);
    while (static_cast<int>(missing.size()) < n) {
      const Index t{pos(rng), 0};
      if (std::find(missing.begin(), missing.end(), t) == missing.end()) {
        missing.push_back(t);
      }
    }
    const auto op = op_for(missing, w, 0.05 * band_step(rng));
    const double full = diagnostics(op).spectral_norm;
    const double truncated = diagnostics(truncate_operator(op, cut(rng))).spectral_norm;
    EXPECT_LE(truncated, full + 1e-14);
  }
}

TEST(Diagnostics, Singleton) {
  const auto d = diagnostics(op_for({{0, 0}}, IndexWindow::one_d(-5, 5), 0.25));
  EXPECT_DOUBLE_EQ(d.spectral_norm, 0.25);
  EXPECT_DOUBLE_EQ(d.min_eig_I_minus_A, 0.75);
  EXPECT_EQ(d.size, 1u);
  EXPECT_EQ(d.symmetry_defect, 0.0);
}

TEST(Diagnostics, ThreePointSpectrumMatchesCharacteristicPolynomial) {
  for (double f : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto d = diagnostics(op_for(test::range_1d(0, 2), IndexWindow::one_d(-5, 5), f));
    auto roots = char_poly_roots(example_matrix(f * kPi));
    ASSERT_EQ(roots.size(), 3u) << "f=" << f;
    std::sort(roots.begin(), roots.end());
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(d.eigenvalues[i], roots[static_cast<std::size_t>(i)], 1e-12);
    }
    EXPECT_NEAR(d.spectral_norm, roots.back(), 1e-12);
    EXPECT_NEAR(d.min_eig_I_minus_A, 1.0 - roots.back(), 1e-12);
    EXPECT_GT(d.min_eig_I_minus_A, 0.0);
  }
}

TEST(Diagnostics, GapSweepPositiveAndDecreasing) {
  const auto w = IndexWindow::one_d(-30, 30);
  double prev = 1.0;
  for (int m = 1; m <= 20; ++m) {
    const double gap = diagnostics(op_for(test::range_1d(1, m), w, 0.25)).min_eig_I_minus_A;
    EXPECT_GT(gap, 0.0) << "m=" << m;
    EXPECT_LT(gap, prev) << "m=" << m;
    prev = gap;
  }
}

// Near pi the largest eigenvalue of a scattered mask can sit closer to 1
// than double precision resolves, so strict containment is only asserted
// up to 0.8 pi and the rest is checked to rounding.
TEST(Diagnostics, SpectrumInUnitInterval) {
  boost::random::mt19937_64 rng(17);
  boost::random::uniform_int_distribution<std::int64_t> pos(-200, 200);
  boost::random::uniform_int_distribution<int> count(1, 40);
  boost::random::uniform_int_distribution<int> band_step(1, 19);
  const auto w = IndexWindow::one_d(-200, 200);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Index> missing;
    const int n = count(rng);
    while (static_cast<int>(missing.size()) < n) {
      const Index t{pos(rng), 0};
      if (std::find(missing.begin(), missing.end(), t) == missing.end()) {
        missing.push_back(t);
      }
    }
    const double f = 0.05 * band_step(rng);
    const auto d = diagnostics(op_for(missing, w, f));
    EXPECT_GE(d.eigenvalues.minCoeff(), -1e-10);
    EXPECT_LE(d.eigenvalues.maxCoeff(), 1.0 + 64 * std::numeric_limits<double>::epsilon());
    if (f <= 0.8) {
      EXPECT_LT(d.eigenvalues.maxCoeff(), 1.0) << "f=" << f;
    }
    EXPECT_EQ(d.symmetry_defect, 0.0);
  }
}

TEST(PowerIteration, AgreesWithEigensolver) {
  const auto op = op_for(test::range_1d(1, 8), IndexWindow::one_d(-20, 20), 0.3);
  EXPECT_NEAR(power_iteration_norm(op.matrix), diagnostics(op).spectral_norm, 1e-9);
}

TEST(WriteOperatorCsv, HeaderAndRows) {
  const auto op = op_for(test::range_1d(0, 2), IndexWindow::one_d(-5, 5), 0.5);
  std::ostringstream out;
  write_operator_csv(out, op);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.front(), '#');
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace bandfill
