#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccost {

/// Process exit codes of the command-line tool.
enum ExitStatus : int {
  exit_ok = 0,
  exit_validation = 1,  // invalid catalog/assessment content or binding
  exit_usage = 2,       // bad arguments or unreadable files
};

/// Runs one subcommand. `args` excludes the program name. A path of "-"
/// reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ccost
