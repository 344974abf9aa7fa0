#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace landau::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kRuntimeError = 3,
};

/// Runs one command line (without the program name).  Results go to `out`
/// unless --out redirects them to a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace landau::cli
