#include "bandfill/masks.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "bandfill/error.hpp"

namespace bandfill {

IndexWindow::IndexWindow(int dims, Index lo, Index hi) : dims_(dims), lo_(lo), hi_(hi) {
  if (lo_[0] > hi_[0] || lo_[1] > hi_[1]) {
    throw GeometryError("index window must satisfy lo <= hi on every axis");
  }
}

IndexWindow IndexWindow::one_d(std::int64_t lo, std::int64_t hi) {
  return IndexWindow(1, Index{lo, 0}, Index{hi, 0});
}

IndexWindow IndexWindow::two_d(Index lo, Index hi) { return IndexWindow(2, lo, hi); }

std::size_t IndexWindow::extent(int axis) const noexcept {
  const auto k = static_cast<std::size_t>(axis);
  return static_cast<std::size_t>(hi_[k] - lo_[k] + 1);
}

bool IndexWindow::contains(Index t) const noexcept {
  return t[0] >= lo_[0] && t[0] <= hi_[0] && t[1] >= lo_[1] && t[1] <= hi_[1];
}

std::size_t IndexWindow::offset(Index t) const noexcept {
  return static_cast<std::size_t>(t[0] - lo_[0]) * extent(1) +
         static_cast<std::size_t>(t[1] - lo_[1]);
}

Index IndexWindow::index_at(std::size_t offset) const noexcept {
  const std::size_t cols = extent(1);
  return Index{lo_[0] + static_cast<std::int64_t>(offset / cols),
               lo_[1] + static_cast<std::int64_t>(offset % cols)};
}

Series::Series(IndexWindow window, std::vector<double> values)
    : window_(window), values_(std::move(values)) {
  if (values_.size() != window_.size()) {
    throw GeometryError("series length does not match its window");
  }
}

Series::Series(IndexWindow window) : window_(window), values_(window.size(), 0.0) {}

Series Series::one_d(std::int64_t lo, std::vector<double> values) {
  if (values.empty()) {
    throw GeometryError("series must hold at least one sample");
  }
  const auto hi = lo + static_cast<std::int64_t>(values.size()) - 1;
  return Series(IndexWindow::one_d(lo, hi), std::move(values));
}

double Series::at(Index t) const {
  if (!window_.contains(t)) {
    throw GeometryError("index " + format_index(t, window_.dims()) + " outside series window");
  }
  return values_[window_.offset(t)];
}

double& Series::at(Index t) {
  if (!window_.contains(t)) {
    throw GeometryError("index " + format_index(t, window_.dims()) + " outside series window");
  }
  return values_[window_.offset(t)];
}

bool ObservationMask::is_missing(Index t) const noexcept {
  return window_.contains(t) && flags_[window_.offset(t)] != 0;
}

ObservationMask make_mask(const IndexWindow& window, std::span<const Index> missing) {
  std::vector<char> flags(window.size(), 0);
  std::vector<Index> sorted(missing.begin(), missing.end());
  for (const Index& t : sorted) {
    if (window.dims() == 1 && t[1] != 0) {
      throw GeometryError("2D index given for a 1D window");
    }
    if (!window.contains(t)) {
      throw GeometryError("missing index " + format_index(t, window.dims()) +
                          " lies outside the window");
    }
    char& flag = flags[window.offset(t)];
    if (flag != 0) {
      throw GeometryError("duplicate missing index " + format_index(t, window.dims()));
    }
    flag = 1;
  }
  std::sort(sorted.begin(), sorted.end());
  return ObservationMask(window, std::move(sorted), std::move(flags));
}

Series apply_mask(const Series& series, const ObservationMask& mask) {
  if (!(series.window() == mask.window())) {
    throw GeometryError("series window does not match mask window");
  }
  Series out = series;
  auto values = out.values();
  for (const Index& t : mask.missing()) {
    values[mask.window().offset(t)] = 0.0;
  }
  return out;
}

bool has_observed_half_line(const ObservationMask& mask) {
  const IndexWindow& w = mask.window();
  if (w.dims() == 1) {
    return !mask.is_missing(w.lo()) || !mask.is_missing(w.hi());
  }
  const auto edge_observed = [&](int axis, std::int64_t fixed) {
    const int other = 1 - axis;
    for (std::int64_t k = w.lo()[other]; k <= w.hi()[other]; ++k) {
      Index t{};
      t[static_cast<std::size_t>(axis)] = fixed;
      t[static_cast<std::size_t>(other)] = k;
      if (mask.is_missing(t)) {
        return false;
      }
    }
    return true;
  };
  return edge_observed(0, w.lo()[0]) || edge_observed(0, w.hi()[0]) ||
         edge_observed(1, w.lo()[1]) || edge_observed(1, w.hi()[1]);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  std::int64_t value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("invalid integer '" + std::string(s) + "' in index set '" +
                     std::string(context) + "'");
  }
  return value;
}

// "a" or "a..b", optionally wrapped in parentheses.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view s, std::string_view context) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    s = trim(s.substr(1, s.size() - 2));
  }
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    const auto v = parse_int(s, context);
    return {v, v};
  }
  const auto lo = parse_int(s.substr(0, dots), context);
  const auto hi = parse_int(s.substr(dots + 2), context);
  if (lo > hi) {
    throw ParseError("empty range '" + std::string(s) + "' in index set '" +
                     std::string(context) + "'");
  }
  return {lo, hi};
}

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
      if (depth < 0) {
        throw ParseError("unbalanced ')' in index set '" + std::string(text) + "'");
      }
    } else if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) {
    throw ParseError("unbalanced '(' in index set '" + std::string(text) + "'");
  }
  parts.push_back(text.substr(start));
  return parts;
}

constexpr std::int64_t kMaxExpandedIndices = 50'000'000;

}  // namespace

std::vector<Index> parse_index_set(std::string_view text, int dims) {
  if (dims != 1 && dims != 2) {
    throw ParameterError("index sets are 1D or 2D");
  }
  std::vector<Index> out;
  if (trim(text).empty()) {
    return out;
  }
  std::int64_t total = 0;
  for (std::string_view part : split_top_level(text)) {
    part = trim(part);
    if (part.empty()) {
      throw ParseError("empty element in index set '" + std::string(text) + "'");
    }
    if (dims == 1) {
      const auto [lo, hi] = parse_range(part, text);
      total += hi - lo + 1;
      if (total > kMaxExpandedIndices) {
        throw ParseError("index set too large");
      }
      for (std::int64_t t = lo; t <= hi; ++t) {
        out.push_back(Index{t, 0});
      }
      continue;
    }
    std::string_view body = part;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
      body = trim(body.substr(1, body.size() - 2));
    }
    const auto cross = body.find('x');
    if (cross == std::string_view::npos) {
      throw ParseError("2D block '" + std::string(part) + "' needs the form 'r0..r1 x c0..c1'");
    }
    const auto [r0, r1] = parse_range(body.substr(0, cross), text);
    const auto [c0, c1] = parse_range(body.substr(cross + 1), text);
    total += (r1 - r0 + 1) * (c1 - c0 + 1);
    if (total > kMaxExpandedIndices) {
      throw ParseError("index set too large");
    }
    for (std::int64_t r = r0; r <= r1; ++r) {
      for (std::int64_t c = c0; c <= c1; ++c) {
        out.push_back(Index{r, c});
      }
    }
  }
  return out;
}

std::string format_index(Index t, int dims) {
  std::ostringstream s;
  if (dims == 1) {
    s << t[0];
  } else {
    s << '(' << t[0] << ',' << t[1] << ')';
  }
  return s.str();
}

}  // namespace bandfill
