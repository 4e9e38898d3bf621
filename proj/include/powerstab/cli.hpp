#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "powerstab/ideal.hpp"

namespace powerstab {

/// Exit codes of the ps tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // instability or obstruction found
  kExitUsage = 2,     // usage, parse or domain error
  kExitBudget = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;  // stdout
  std::string error;   // stderr
};

/// Runs one invocation. `args` excludes the program name. `in` backs `--gens -`.
CommandResult run_command(const std::vector<std::string>& args, std::istream& in);
CommandResult run_command(const std::vector<std::string>& args);

/// Generators from inline text, one or more per line. Blank lines and
/// lines starting with '#' are skipped. Parse errors report line and column.
/// An empty list is a usage error.
Ideal load_ideal(std::string_view text, const Ring& ring, const GroebnerOptions& options = {});
Ideal load_ideal_file(const std::string& path, const Ring& ring, const GroebnerOptions& options = {});

}  // namespace powerstab
