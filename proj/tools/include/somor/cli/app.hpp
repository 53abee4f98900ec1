#pragma once

#include <string>
#include <vector>

namespace somor::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitNotConverged = 4,
};

/// Runs `somor <subcommand> ...`; args excludes the program name.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace somor::cli
