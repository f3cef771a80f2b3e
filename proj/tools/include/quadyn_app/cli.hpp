#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadyn::app {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitNoConvergence = 3,
};

/// Runs the command line given as argv-style strings (args[0] is the program
/// name). Primary output goes to out unless --out names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadyn::app
