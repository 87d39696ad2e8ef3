#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modblob::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMalformed = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kDepthExceeded = 3;
inline constexpr int kInequivalent = 4;

/// Runs one command line (args exclude the program name).  "-" as a file
/// argument reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace modblob::cli
