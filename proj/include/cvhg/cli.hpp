#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cvhg {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitDomain = 2, kExitVerify = 3 };

/// Runs the `cvhg` command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvhg
