#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace genreach::cli {

// Exit codes of the command-line tool.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kInvalid = 3,  // invalid game or strategy, cap exceeded, precondition
  kDisagree = 4,
  kRefuted = 5,
  kBudget = 6,
};

inline constexpr std::string_view kVersion = "0.1.0";

// Runs the tool on `args` (without the program name). Machine-readable
// output goes to `out`, summaries and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace genreach::cli
