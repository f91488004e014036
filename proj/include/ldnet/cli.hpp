#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldnet::cli {

enum ExitCode : int { ok = 0, domain_failure = 1, malformed_input = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ldnet::cli
