#include "mertens/arith/quotient.hpp"

#include "mertens/errors.hpp"
#include "mertens/int128.hpp"

#include <cmath>

namespace mertens {

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

QuotientBlocks quotient_blocks(std::uint64_t x)
{
    if (x == 0)
        throw PreconditionError("quotient_blocks requires x >= 1");
    QuotientBlocks out{x, {}};
    out.blocks.reserve(2 * isqrt(x) + 1);
    for_each_quotient_block(x, [&](const QuotientBlock& b) { out.blocks.push_back(b); });
    return out;
}

bool nested_floor_check(std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    if (a == 0 || b == 0 || c == 0)
        throw PreconditionError("nested_floor_check requires positive arguments");
    u128 bc = static_cast<u128>(b) * c;
    return static_cast<u128>((a / b) / c) == static_cast<u128>(a) / bc;
}

} // namespace mertens
