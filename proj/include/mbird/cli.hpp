#pragma once

// The `mbird` command line: subcommands reduce, graph, check, fr,
// enumerate, oracle, crosscheck and compare.

#include <ostream>
#include <string>
#include <vector>

#include "mbird/enumerate.hpp"

namespace mbird {

/// Exit codes: 0 success, 1 a probed property or comparison failed, 2 bad
/// usage or input. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CommandOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// One line per check on `out` and a failure count on `err`; returns 1
/// when any check failed.
int print_crosscheck(const CrosscheckReport& r, std::ostream& out, std::ostream& err);

/// run_cli on an argument vector that excludes the program name.
CommandOutcome run_command(const std::vector<std::string>& args);

}  // namespace mbird
