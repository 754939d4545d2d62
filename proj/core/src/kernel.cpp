#include "bandfill/kernel.hpp"

#include <cmath>
#include <sstream>

#include "bandfill/error.hpp"

namespace bandfill {

BandLimit::BandLimit(double omega) : omega_(omega) {
  if (!(omega > 0.0 && omega < std::numbers::pi)) {
    std::ostringstream msg;
    msg << "band limit must lie in (0, pi), got " << omega;
    throw ParameterError(msg.str());
  }
}

double sinc(double x) noexcept {
  if (x == 0.0) {
    return 1.0;
  }
  return std::sin(x) / x;
}

double lowpass_kernel(BandLimit band, std::int64_t lag) noexcept {
  const double w = band.omega();
  return w * sinc(w * static_cast<double>(lag)) / std::numbers::pi;
}

double lowpass_kernel_2d(BandLimit row_band, BandLimit col_band, Index lag) noexcept {
  return lowpass_kernel(row_band, lag[0]) * lowpass_kernel(col_band, lag[1]);
}

BandLimit Band::axis(int k) const {
  if (k < 0 || k >= dims_) {
    throw ParameterError("band axis out of range");
  }
  return BandLimit(axes_[static_cast<std::size_t>(k)]);
}

double Band::kernel(Index lag) const noexcept {
  const auto h = [](double w, std::int64_t t) {
    return w * sinc(w * static_cast<double>(t)) / std::numbers::pi;
  };
  if (dims_ == 1) {
    return h(axes_[0], lag[0]);
  }
  return h(axes_[0], lag[0]) * h(axes_[1], lag[1]);
}

double Band::peak() const noexcept {
  double p = axes_[0] / std::numbers::pi;
  if (dims_ == 2) {
    p *= axes_[1] / std::numbers::pi;
  }
  return p;
}

}  // namespace bandfill
