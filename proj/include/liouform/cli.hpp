#pragma once

#include <string>
#include <vector>

namespace liouform::cli {

// Runs the command line given the argv tail (no program name).
// Exit codes: 0 success, 1 invalid input, 2 verification failure,
// 3 solver non-convergence.
int run(const std::vector<std::string>& args);

}  // namespace liouform::cli
