#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sprim::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kParse = 2, kDegenerate = 3, kSolver = 4 };

/// Runs `sprim <subcommand> [flags]` with args excluding the program name.
/// JSON goes to `out`, diagnostics to `err`; `in` is read when --in is - or absent.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sprim::cli
