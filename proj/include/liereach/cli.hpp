// cli.hpp - command-line entry point.
//
// Exit codes: 0 success, 1 condition failed under --expect controllable (or a
// demo that does not reproduce its expected fields), 2 input errors and usage
// errors, 3 inconclusive analysis.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace liereach::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConditionFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInconclusive = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liereach::cli
