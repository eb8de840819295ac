#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rigidity::cli {

/// Exit codes of the rigidity tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadInput = 2,
  kBadParameter = 3,
  kFalsified = 4,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rigidity::cli
