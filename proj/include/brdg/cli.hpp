#ifndef BRDG_CLI_HPP
#define BRDG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace brdg {

enum ExitCode : int {
  kExitPositive = 0,
  kExitNegative = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace brdg

#endif  // BRDG_CLI_HPP
