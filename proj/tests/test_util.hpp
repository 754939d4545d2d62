#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "bandfill/masks.hpp"

namespace bandfill::test {

/// Reference kernel written out independently of the library.
inline double h_ref(double omega, double t) {
  if (t == 0.0) {
    return omega / std::numbers::pi;
  }
  return std::sin(omega * t) / (std::numbers::pi * t);
}

inline std::vector<Index> range_1d(std::int64_t lo, std::int64_t hi) {
  std::vector<Index> out;
  for (std::int64_t t = lo; t <= hi; ++t) {
    out.push_back(Index{t, 0});
  }
  return out;
}

inline Series random_series(const IndexWindow& window, std::uint64_t seed) {
  boost::random::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal;
  Series s(window);
  for (double& v : s.values()) {
    v = normal(rng);
  }
  return s;
}

}  // namespace bandfill::test
