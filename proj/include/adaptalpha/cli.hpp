#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adaptalpha {

// Full command-line front end, separated from main() so tests can drive it.
// Returns 0 on success, 1 on usage errors, 2 on computation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adaptalpha
