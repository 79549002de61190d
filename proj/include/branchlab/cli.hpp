#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace branchlab {

/// Runs one CLI command.  args excludes the program name.  Exit codes:
/// 0 success, 1 usage/parse error, 2 computation error.  Errors are emitted
/// as a single JSON diagnostic line on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace branchlab
