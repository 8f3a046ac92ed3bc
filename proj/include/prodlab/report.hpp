#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace prodlab {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitClaimFailed = 1, kExitUsage = 2, kExitError = 3 };

/// Parses and dispatches one command line (without the program name). The
/// report goes to out, or to the --out path; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prodlab
