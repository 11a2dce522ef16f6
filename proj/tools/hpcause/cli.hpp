#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hpcause::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;  // bad flags, unreadable files, selftest disagreement
inline constexpr int kParse = 2;
inline constexpr int kInvalidModel = 3;
inline constexpr int kBudget = 4;
inline constexpr int kInvalidQuery = 5;  // parses, but does not fit the model

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpcause::cli
