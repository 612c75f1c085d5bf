#include "mertens/budget.hpp"

#include "mertens/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <string>

namespace mertens {

std::uint64_t parse_byte_count(std::string_view text)
{
    if (text.empty())
        return 0;
    std::uint64_t scale = 1;
    char last = static_cast<char>(std::toupper(static_cast<unsigned char>(text.back())));
    if (last == 'K' || last == 'M' || last == 'G') {
        scale = last == 'K' ? (1u << 10) : (last == 'M' ? (1u << 20) : (1u << 30));
        text.remove_suffix(1);
    }
    if (text.empty())
        return 0;
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            return 0;
        if (value > (std::numeric_limits<std::uint64_t>::max() - 9) / 10)
            return 0;
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (value > std::numeric_limits<std::uint64_t>::max() / scale)
        return 0;
    return value * scale;
}

std::uint64_t memory_budget()
{
    const char* env = std::getenv(std::string(kMemoryBudgetEnv).c_str());
    if (env == nullptr)
        return kDefaultMemoryBudget;
    std::uint64_t parsed = parse_byte_count(env);
    return parsed == 0 ? kDefaultMemoryBudget : parsed;
}

void require_capacity(std::uint64_t bytes, std::string_view what)
{
    std::uint64_t budget = memory_budget();
    if (bytes > budget)
        throw CapacityError(std::string(what) + " needs " + std::to_string(bytes) +
                            " bytes, over the memory budget of " + std::to_string(budget) +
                            " bytes (set " + std::string(kMemoryBudgetEnv) + " to raise it)");
}

} // namespace mertens
