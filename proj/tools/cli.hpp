#pragma once

#include <iosfwd>

namespace oamwalk::cli {

enum ExitCode {
  kOk = 0,
  kUnexpected = 1,
  kConfigFailure = 2,
  kDomainFailure = 3,
  kConvergenceFailure = 4,
};

// Whole command line, minus process concerns. Human summary goes to `out`,
// machine-readable error JSON to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oamwalk::cli
