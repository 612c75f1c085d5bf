#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mertens::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (program name excluded), runs the subcommand and writes its
/// report to the -o target ("-" is `out`). Diagnostics go to `err`.
/// Returns 0 when every check passed, 1 when any row failed, 2 on usage or
/// capacity errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Non-negative integer written plainly or in scientific form ("1e8").
std::uint64_t parse_count(std::string_view text);
/// Comma-separated parse_count values.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

} // namespace mertens::cli
