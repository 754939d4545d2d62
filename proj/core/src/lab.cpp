#include "bandfill/lab.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "bandfill/error.hpp"

namespace bandfill {

std::string_view to_string(SignalKind kind) noexcept {
  return kind == SignalKind::sinc_mixture ? "sinc_mixture" : "lowpassed_noise";
}

SignalKind parse_signal_kind(std::string_view text) {
  if (text == "sinc_mixture") {
    return SignalKind::sinc_mixture;
  }
  if (text == "lowpassed_noise") {
    return SignalKind::lowpassed_noise;
  }
  throw ParseError("unknown signal kind '" + std::string(text) + "'");
}

BandLimitedSignal::BandLimitedSignal(const SignalSpec& spec) : omega_(spec.band.omega()) {
  if (spec.window.dims() != 1) {
    throw ParameterError("signal synthesis is one-dimensional");
  }
  if (spec.kind == SignalKind::sinc_mixture) {
    if (spec.centers.size() != spec.amplitudes.size()) {
      throw ParameterError("sinc mixture needs one amplitude per center");
    }
    centers_ = spec.centers;
    amplitudes_ = spec.amplitudes;
    return;
  }
  if (spec.pad < 0) {
    throw ParameterError("noise padding must be non-negative");
  }
  // Filtered white noise is a sinc mixture with integer centers.
  Rng rng(spec.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  const std::int64_t lo = spec.window.lo()[0] - spec.pad;
  const std::int64_t hi = spec.window.hi()[0] + spec.pad;
  centers_.reserve(static_cast<std::size_t>(hi - lo + 1));
  amplitudes_.reserve(centers_.capacity());
  for (std::int64_t s = lo; s <= hi; ++s) {
    centers_.push_back(static_cast<double>(s));
    amplitudes_.push_back(normal(rng));
  }
}

double BandLimitedSignal::operator()(std::int64_t t) const {
  double x = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    const double u = static_cast<double>(t) - centers_[j];
    x += amplitudes_[j] * omega_ * sinc(omega_ * u) / std::numbers::pi;
  }
  return x;
}

Series BandLimitedSignal::sample(const IndexWindow& window) const {
  if (window.dims() != 1) {
    throw ParameterError("signal synthesis is one-dimensional");
  }
  Series out(window);
  auto values = out.values();
  for (std::size_t off = 0; off < values.size(); ++off) {
    values[off] = (*this)(window.lo()[0] + static_cast<std::int64_t>(off));
  }
  return out;
}

Series gen_bandlimited(const SignalSpec& spec) {
  return BandLimitedSignal(spec).sample(spec.window);
}

SignalSpec random_sinc_mixture(BandLimit band, IndexWindow window, int terms, double center_lo,
                               double center_hi, Rng& rng) {
  if (terms < 1) {
    throw ParameterError("sinc mixture needs at least one term");
  }
  if (!(center_lo <= center_hi)) {
    throw ParameterError("center range is empty");
  }
  boost::random::uniform_real_distribution<double> uniform(center_lo, center_hi);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  SignalSpec spec;
  spec.kind = SignalKind::sinc_mixture;
  spec.band = band;
  spec.window = window;
  for (int j = 0; j < terms; ++j) {
    spec.centers.push_back(uniform(rng));
    spec.amplitudes.push_back(normal(rng));
  }
  return spec;
}

NoisySeries add_noise(const Series& series, const ObservationMask& mask, double sigma,
                      std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw ParameterError("noise level must be non-negative");
  }
  if (!(series.window() == mask.window())) {
    throw GeometryError("series window does not match mask window");
  }
  NoisySeries out{series, 0.0};
  if (sigma == 0.0) {
    return out;
  }
  Rng rng(seed);
  boost::random::normal_distribution<double> normal(0.0, sigma);
  auto values = out.series.values();
  double sum_sq = 0.0;
  for (std::size_t off = 0; off < values.size(); ++off) {
    if (mask.is_missing_at(off)) {
      continue;
    }
    const double eta = normal(rng);
    values[off] += eta;
    sum_sq += eta * eta;
  }
  out.eta_norm = std::sqrt(sum_sq);
  return out;
}

}  // namespace bandfill
