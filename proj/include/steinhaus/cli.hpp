#pragma once

#include <string>
#include <vector>

namespace steinhaus {

/// Runs the command-line tool in-process. Exit codes: 0 success, 1 usage,
/// 2 budget exhausted, 3 horizon violation, 4 I/O failure.
int run_cli(const std::vector<std::string>& args);

} // namespace steinhaus
