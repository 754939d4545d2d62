#include "bandfill/series_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "bandfill/error.hpp"

namespace bandfill {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no) {
  T value{};
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) +
                     "'");
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

SeriesFile read_series_csv(std::istream& in) {
  SeriesFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<Index> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    const auto fields = split(view);
    if (!have_header) {
      if (fields.size() == 2 && fields[0] == "t" && fields[1] == "value") {
        file.dims = 1;
      } else if (fields.size() == 3 && fields[0] == "t1" && fields[1] == "t2" &&
                 fields[2] == "value") {
        file.dims = 2;
      } else {
        throw ParseError("expected header 't,value' or 't1,t2,value', got '" +
                         std::string(view) + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(file.dims) + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(file.dims + 1) + " fields");
    }
    Index t{parse_number<std::int64_t>(fields[0], line_no), 0};
    if (file.dims == 2) {
      t[1] = parse_number<std::int64_t>(fields[1], line_no);
    }
    const double value = parse_number<double>(fields.back(), line_no);
    if (!seen.insert(t).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate index " +
                       format_index(t, file.dims));
    }
    file.samples.emplace_back(t, value);
  }
  if (!have_header) {
    throw ParseError("series file is empty");
  }
  return file;
}

void write_series_csv(std::ostream& out, const SeriesFile& file) {
  out << (file.dims == 1 ? "t,value\n" : "t1,t2,value\n");
  for (const auto& [t, v] : file.samples) {
    out << t[0] << ',';
    if (file.dims == 2) {
      out << t[1] << ',';
    }
    out << format_double(v) << '\n';
  }
}

void write_series_csv(std::ostream& out, const Series& series) {
  SeriesFile file;
  file.dims = series.window().dims();
  const auto values = series.values();
  file.samples.reserve(values.size());
  for (std::size_t off = 0; off < values.size(); ++off) {
    file.samples.emplace_back(series.window().index_at(off), values[off]);
  }
  write_series_csv(out, file);
}

IndexWindow bounding_window(const SeriesFile& file, const std::vector<Index>& extra) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  Index lo{kMax, kMax};
  Index hi{kMin, kMin};
  const auto widen = [&](Index t) {
    for (std::size_t k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], t[k]);
      hi[k] = std::max(hi[k], t[k]);
    }
  };
  for (const auto& sample : file.samples) {
    widen(sample.first);
  }
  for (const Index& t : extra) {
    widen(t);
  }
  if (lo[0] == kMax) {
    throw GeometryError("no samples to span a window");
  }
  if (file.dims == 1) {
    return IndexWindow::one_d(lo[0], hi[0]);
  }
  return IndexWindow::two_d(lo, hi);
}

std::pair<Series, std::vector<Index>> densify(const SeriesFile& file, const IndexWindow& window) {
  if (window.dims() != file.dims) {
    throw GeometryError("window dimensionality does not match the series file");
  }
  Series series(window);
  std::vector<char> present(window.size(), 0);
  for (const auto& [t, v] : file.samples) {
    if (!window.contains(t)) {
      throw GeometryError("sample " + format_index(t, file.dims) + " lies outside the window");
    }
    series.values()[window.offset(t)] = v;
    present[window.offset(t)] = 1;
  }
  std::vector<Index> absent;
  for (std::size_t off = 0; off < present.size(); ++off) {
    if (present[off] == 0) {
      absent.push_back(window.index_at(off));
    }
  }
  return {std::move(series), std::move(absent)};
}

}  // namespace bandfill
