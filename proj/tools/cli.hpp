#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpbc::cli {

// Runs one tool invocation. argv excludes the program name. Results go to
// `out` (stdout), logs and manifests without an output file go to `err`.
// Returns 0 on success, 1 on user error, 2 on internal invariant failure.
int dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err);

}  // namespace fpbc::cli
