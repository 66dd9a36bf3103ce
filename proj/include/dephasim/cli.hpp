#pragma once

#include <string>
#include <vector>

namespace dephasim::cli {

// Entry point behind the dephasim binary.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.
int run_command(const std::vector<std::string>& args);
int run_command(int argc, const char* const* argv);

}  // namespace dephasim::cli
