#pragma once

#include <iosfwd>

namespace injrad::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNotApplicable = 3,
  kInconclusive = 4,
};

/// Runs one command line. Reports go to `out` (or the --out file), usage and
/// errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace injrad::cli
