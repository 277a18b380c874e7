#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tscale::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageOrIo = 1,
  kFalsified = 2,
};

/// Runs one subcommand (`solve`, `verify`, `grid`). args[0] is the program
/// name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tscale::cli
