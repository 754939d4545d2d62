#include "bandfill/error.hpp"

namespace bandfill {

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::parse:
      return "parse";
    case ErrorCategory::parameter:
      return "parameter";
    case ErrorCategory::geometry:
      return "geometry";
    case ErrorCategory::numeric:
      return "numeric";
    case ErrorCategory::solver:
      return "solver";
  }
  return "unknown";
}

}  // namespace bandfill
