#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cubeforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInvalidInput = 2,
  kExitPrecisionBudget = 3,
};

/// Digit budget from CUBEFORGE_DIGIT_BUDGET, or the library default.
/// Throws InvalidInput on a malformed value.
std::size_t digit_budget_from_env();

/// Runs one command line (without the program name). Results go to `out`
/// as JSON, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubeforge
