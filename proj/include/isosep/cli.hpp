#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isosep::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBudgetExhausted = 2,
  kInvalidInput = 3,
  kViolation = 4,
  kMismatch = 5,
};

/// Runs one command line (args[0] is the program name). Payload goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isosep::cli
