#pragma once

#include <cstdint>
#include <vector>

namespace mertens {

/// A maximal run of i with floor(x / i) == q.
struct QuotientBlock {
    std::uint64_t q;
    std::uint64_t i_lo;
    std::uint64_t i_hi;

    std::uint64_t length() const { return i_hi - i_lo + 1; }
    bool operator==(const QuotientBlock&) const = default;
};

/// Partition of [1, x] into quotient blocks, ordered by increasing i
/// (hence strictly decreasing q).
struct QuotientBlocks {
    std::uint64_t x = 0;
    std::vector<QuotientBlock> blocks;
};

QuotientBlocks quotient_blocks(std::uint64_t x);

/// Calls fn(QuotientBlock) for each block of [1, x] without allocating.
template <class Fn>
void for_each_quotient_block(std::uint64_t x, Fn&& fn)
{
    for (std::uint64_t i = 1; i <= x;) {
        std::uint64_t q = x / i;
        std::uint64_t hi = x / q;
        fn(QuotientBlock{q, i, hi});
        i = hi + 1;
    }
}

/// Largest r with r * r <= n.
std::uint64_t isqrt(std::uint64_t n);

/// floor(floor(a / b) / c) == floor(a / (b * c)); always true for positive arguments.
bool nested_floor_check(std::uint64_t a, std::uint64_t b, std::uint64_t c);

} // namespace mertens
