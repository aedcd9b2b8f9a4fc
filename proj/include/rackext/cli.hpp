#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rackext::cli {

/// Exit codes of `run`.
enum ExitCode : int { kOk = 0, kFalse = 1, kMalformed = 2, kCapExceeded = 3 };

/// Runs one command. `args` excludes the program name. JSON results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rackext::cli
