#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bp::cli {

/// Exit codes of every command.
enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kInconclusive = 3 };

/// Runs one command line (without the program name). The report goes to
/// `out`; usage errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bp::cli
