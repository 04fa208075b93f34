#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oncodp::cli {

enum ExitStatus : int {
    exit_ok = 0,
    exit_invalid_input = 1,
    exit_usage = 2,
};

/// Runs one command line (without the program name) and returns the exit
/// code. Summaries go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace oncodp::cli
