#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ap4sq {

/// Runs the command line (without the program name). Exit codes: 0 success,
/// 1 invalid input or usage, 2 undecided within the given bounds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ap4sq
