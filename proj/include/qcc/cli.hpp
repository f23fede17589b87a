#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcc {

/// Runs the qcclab command line on `args` (program name excluded); returns the process exit code
/// (0 success, 1 assertion or agreement failure, 2 usage or I/O error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcc
