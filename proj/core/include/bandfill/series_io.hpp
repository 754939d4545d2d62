#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "bandfill/masks.hpp"

namespace bandfill {

/// Contents of a series CSV: header "t,value" (1D) or "t1,t2,value" (2D),
/// one sample per row, absent rows meaning missing samples.
struct SeriesFile {
  int dims = 1;
  std::vector<std::pair<Index, double>> samples;
};

/// Locale-independent parse. Throws ParseError on malformed rows, unknown
/// headers, non-integer indices or duplicates.
SeriesFile read_series_csv(std::istream& in);

/// Writes every sample of `series` with round-trip precision.
void write_series_csv(std::ostream& out, const Series& series);
void write_series_csv(std::ostream& out, const SeriesFile& file);

/// Smallest window holding every sample and every index in `extra`.
IndexWindow bounding_window(const SeriesFile& file, const std::vector<Index>& extra = {});

/// Dense series on `window`; absent samples are zero and listed in the
/// second member.
std::pair<Series, std::vector<Index>> densify(const SeriesFile& file, const IndexWindow& window);

}  // namespace bandfill
