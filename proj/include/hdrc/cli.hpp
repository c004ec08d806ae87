#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hdrc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kBadConfig = 2;
inline constexpr int kSolverRefused = 3;
inline constexpr int kInsufficientData = 4;

// "start:stop:step" (stop included when it falls on the grid) or "a,b,c".
std::vector<double> parse_grid(std::string_view spec);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hdrc::cli
