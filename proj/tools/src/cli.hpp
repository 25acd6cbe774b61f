#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperltl::cli {

/// Exit codes of the `hyperltl` tool.
enum Exit : int {
    Holds = 0,
    Fails = 1,
    Usage = 2,
    ResourceLimit = 3,
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hyperltl::cli
