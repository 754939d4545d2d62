#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bandfill/kernel.hpp"

namespace bandfill {

/// Finite box of integer indices, inclusive on both ends. In 1D the second
/// component of `lo` and `hi` is zero.
class IndexWindow {
 public:
  static IndexWindow one_d(std::int64_t lo, std::int64_t hi);
  static IndexWindow two_d(Index lo, Index hi);

  int dims() const noexcept { return dims_; }
  Index lo() const noexcept { return lo_; }
  Index hi() const noexcept { return hi_; }

  std::size_t extent(int axis) const noexcept;
  std::size_t size() const noexcept { return extent(0) * extent(1); }

  bool contains(Index t) const noexcept;

  /// Row-major position of `t` inside the window. `t` must be contained.
  std::size_t offset(Index t) const noexcept;
  Index index_at(std::size_t offset) const noexcept;

  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;

 private:
  IndexWindow(int dims, Index lo, Index hi);

  int dims_;
  Index lo_;
  Index hi_;
};

/// Dense real samples over a window. Entries at missing positions carry no
/// information and are ignored by every consumer.
class Series {
 public:
  Series(IndexWindow window, std::vector<double> values);

  /// Zero-filled series.
  explicit Series(IndexWindow window);

  /// Samples at lo, lo+1, ..., lo+values.size()-1.
  static Series one_d(std::int64_t lo, std::vector<double> values);

  const IndexWindow& window() const noexcept { return window_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double at(Index t) const;
  double& at(Index t);

  friend bool operator==(const Series&, const Series&) = default;

 private:
  IndexWindow window_;
  std::vector<double> values_;
};

/// The missing set M inside a window; the rest of the window is observed.
/// Indices outside the window count as observed zeros.
class ObservationMask {
 public:
  const IndexWindow& window() const noexcept { return window_; }

  /// Missing indices in lexicographic order. This order fixes the row and
  /// column numbering of the gap operator.
  std::span<const Index> missing() const noexcept { return missing_; }

  std::size_t missing_count() const noexcept { return missing_.size(); }
  std::size_t observed_count() const noexcept { return window_.size() - missing_.size(); }

  bool is_missing(Index t) const noexcept;
  bool is_missing_at(std::size_t offset) const noexcept { return flags_[offset] != 0; }

 private:
  friend ObservationMask make_mask(const IndexWindow& window, std::span<const Index> missing);

  ObservationMask(IndexWindow window, std::vector<Index> missing, std::vector<char> flags)
      : window_(window), missing_(std::move(missing)), flags_(std::move(flags)) {}

  IndexWindow window_;
  std::vector<Index> missing_;
  std::vector<char> flags_;
};

/// Throws GeometryError for indices outside the window, duplicates, or a
/// dimensionality mismatch.
ObservationMask make_mask(const IndexWindow& window, std::span<const Index> missing);

/// Observed entries unchanged, missing entries set to zero.
Series apply_mask(const Series& series, const ObservationMask& mask);

/// Whether the observed set contains a half-line anchored on the window
/// boundary. In 1D: the first or last window sample is observed, so the
/// observed data continues into the zero-padded exterior on that side. In 2D
/// the analogue is a fully observed edge row or column of the window.
bool has_observed_half_line(const ObservationMask& mask);

/// Parses a missing-set description.
///   1D: comma-separated singletons and inclusive ranges, optionally
///       parenthesised: "0", "1..12", "(-3..-1),(5)".
///   2D: comma-separated blocks "r0..r1 x c0..c1" (either side may be a
///       single value).
/// `dims` selects the expected syntax. Throws ParseError.
std::vector<Index> parse_index_set(std::string_view text, int dims);

std::string format_index(Index t, int dims);

}  // namespace bandfill
