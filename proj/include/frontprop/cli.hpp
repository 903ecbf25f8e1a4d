#pragma once

#include <string>
#include <vector>

namespace fprop {

/// Entry point behind the `frontprop` executable. Subcommands: solve,
/// oracle-check, grid-bench, trust-rank, classify. Returns the process exit
/// status: 0 on success, 1 on validation or verification failure, 2 on usage
/// errors. Failures emit a one-line JSON diagnostic on stderr.
int run_command(int argc, const char* const* argv);

/// Convenience overload for in-process callers (argv without the program
/// name is prepended automatically).
int run_command(const std::vector<std::string>& args);

}  // namespace fprop
