#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace zetakit {

// Exit codes: 0 ok, 1 usage, 2 input parse, 3 budget, 4 reconstruction
// no-match, 5 internal invariant violation.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetakit
