#pragma once

#include <cstdint>
#include <string_view>

namespace mertens {

/// Default memory budget for a single table: 4 GiB.
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{4} << 30;

/// Name of the environment variable that overrides the budget. Accepts a byte
/// count with an optional K, M or G suffix (binary multiples).
inline constexpr std::string_view kMemoryBudgetEnv = "MERTENS_MEMORY_BUDGET";

/// Current budget in bytes; reads the environment on every call.
std::uint64_t memory_budget();

/// Parses "512M", "2G", "1048576". Returns 0 on malformed input.
std::uint64_t parse_byte_count(std::string_view text);

/// Throws CapacityError when `bytes` exceeds the budget.
void require_capacity(std::uint64_t bytes, std::string_view what);

} // namespace mertens
