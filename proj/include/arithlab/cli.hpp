#pragma once

// Subcommand front end shared by the arithlab binary and the Python module.

#include <iosfwd>
#include <string>
#include <vector>

namespace arithlab::cli {

enum ExitCode : int { kComputed = 0, kFailure = 1, kNegative = 2 };

/// `args` excludes the program name. JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arithlab::cli
