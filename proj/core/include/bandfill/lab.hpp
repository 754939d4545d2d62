#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <boost/random/mersenne_twister.hpp>

#include "bandfill/kernel.hpp"
#include "bandfill/masks.hpp"

namespace bandfill {

/// Generator used for every seeded draw in the lab. Named in reports so
/// runs can be reproduced across builds.
using Rng = boost::random::mt19937_64;
inline constexpr std::string_view kRngName =
    "boost::random::mt19937_64 + boost::random::normal_distribution";

enum class SignalKind { sinc_mixture, lowpassed_noise };

std::string_view to_string(SignalKind kind) noexcept;
SignalKind parse_signal_kind(std::string_view text);

struct SignalSpec {
  SignalKind kind = SignalKind::sinc_mixture;
  /// Synthesis band; must not exceed the recovery band for exact-recovery
  /// checks.
  BandLimit band = BandLimit::fraction_of_pi(0.2);
  IndexWindow window = IndexWindow::one_d(-60, 60);
  /// sinc_mixture: x(t) = sum_j amplitudes[j] * h(t - centers[j]); centers
  /// may be fractional.
  std::vector<double> centers;
  std::vector<double> amplitudes;
  /// lowpassed_noise: white noise on [lo - pad, hi + pad] filtered by h.
  std::uint64_t seed = 0;
  std::int64_t pad = 1000;
};

/// A band-limited sequence that can be evaluated at any integer, so ground
/// truth is available outside the observation window too.
class BandLimitedSignal {
 public:
  explicit BandLimitedSignal(const SignalSpec& spec);

  double operator()(std::int64_t t) const;
  Series sample(const IndexWindow& window) const;

 private:
  double omega_;
  std::vector<double> centers_;
  std::vector<double> amplitudes_;
};

/// Samples the signal described by `spec` on spec.window (1D only).
Series gen_bandlimited(const SignalSpec& spec);

/// Random sinc mixture: `terms` pulses with centers uniform in
/// [center_lo, center_hi] and standard normal amplitudes.
SignalSpec random_sinc_mixture(BandLimit band, IndexWindow window, int terms, double center_lo,
                               double center_hi, Rng& rng);

struct NoisySeries {
  Series series;
  /// Euclidean norm of the perturbation actually added.
  double eta_norm = 0.0;
};

/// Adds N(0, sigma^2) noise to the observed entries only. Deterministic in
/// `seed`.
NoisySeries add_noise(const Series& series, const ObservationMask& mask, double sigma,
                      std::uint64_t seed);

}  // namespace bandfill
