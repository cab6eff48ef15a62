#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetmorse::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // engine mismatch, failed selftest, quadrature budget
  kUsage = 2,        // bad arguments, unknown model
  kDomain = 3,       // invalid surface invariants and similar domain errors
};

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetmorse::cli
