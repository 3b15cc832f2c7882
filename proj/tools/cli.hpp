#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhwk::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kLimit = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhwk::cli
