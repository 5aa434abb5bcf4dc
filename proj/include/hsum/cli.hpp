#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hsum {

// Command-line driver. args excludes the program name. Exit codes: 0 for a
// completed computation (including proofs of nonexistence), 1 for a failed
// computation, 2 for malformed input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsum
