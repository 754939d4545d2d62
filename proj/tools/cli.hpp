#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bandfill::cli {

/// Exit codes. Stable; documented in the README.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParseError = 2,     // bad flags, malformed files, parameter-domain errors
  kGeometryError = 3,  // windows and index sets that do not fit
  kSolverError = 4,    // numeric failures, non-convergence
};

/// Runs one command line. `args` excludes the program name. Results go to
/// the --output file or to `out`; diagnostics and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandfill::cli
