#pragma once

#include <array>
#include <cstdint>
#include <numbers>

namespace bandfill {

/// Integer lag or position. One-dimensional indices keep the second
/// component at zero.
using Index = std::array<std::int64_t, 2>;

/// Cutoff frequency of the ideal low-pass band, in radians per sample.
/// Always strictly inside (0, pi).
class BandLimit {
 public:
  explicit BandLimit(double omega);

  /// `fraction` of pi, e.g. 0.25 for a quarter band.
  static BandLimit fraction_of_pi(double fraction) {
    return BandLimit(fraction * std::numbers::pi);
  }

  double omega() const noexcept { return omega_; }
  double fraction_of_pi() const noexcept { return omega_ / std::numbers::pi; }

  friend bool operator==(const BandLimit&, const BandLimit&) = default;

 private:
  double omega_;
};

/// sin(x)/x with the removable singularity filled in.
double sinc(double x) noexcept;

/// Impulse response of the ideal low-pass filter with passband [-omega, omega]:
/// h(t) = omega * sinc(omega t) / pi.
double lowpass_kernel(BandLimit band, std::int64_t lag) noexcept;

/// Separable kernel for the rectangular band [-w1, w1] x [-w2, w2].
double lowpass_kernel_2d(BandLimit row_band, BandLimit col_band, Index lag) noexcept;

/// Band limit for 1D or 2D index sets. A 2D band is the axis-aligned
/// rectangle of the two per-axis limits.
class Band {
 public:
  explicit Band(BandLimit omega) : dims_(1), axes_{omega.omega(), 0.0} {}
  Band(BandLimit row, BandLimit col) : dims_(2), axes_{row.omega(), col.omega()} {}

  int dims() const noexcept { return dims_; }
  BandLimit axis(int k) const;

  /// Kernel value at a lag of matching dimensionality.
  double kernel(Index lag) const noexcept;

  /// Kernel value at zero lag, i.e. the diagonal of the gap operator.
  double peak() const noexcept;

  friend bool operator==(const Band&, const Band&) = default;

 private:
  int dims_;
  std::array<double, 2> axes_;
};

}  // namespace bandfill
