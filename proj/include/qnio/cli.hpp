#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnio {

// Exit codes: 0 success, 1 protocol failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnio
