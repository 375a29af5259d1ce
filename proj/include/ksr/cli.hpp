#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ksr {

/// Runs the command line (without the program name). Exit codes: 0 success,
/// 1 parse error, 2 violated precondition, 3 a verification check failed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// key=value lines; blank lines and '#' comments ignored.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

}  // namespace ksr
