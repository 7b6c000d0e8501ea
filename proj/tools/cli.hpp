#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace commdiag::cli {

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`. Exit codes: 0 ok, 1 check failed, 2 input or usage
// error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commdiag::cli
