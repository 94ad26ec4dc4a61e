#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logvor {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitRejected = 1, kExitParse = 2, kExitSolver = 3 };

/// Runs the logvor command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace logvor
