#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigpath::cli {

// Runs one command line (without the program name). Returns the process exit code:
// 0 success, 1 domain violation, 2 parse error, 3 internal cross-check failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigpath::cli
