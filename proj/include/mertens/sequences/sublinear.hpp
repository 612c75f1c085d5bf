#pragma once

#include <cstdint>
#include <vector>

namespace mertens {

/// Mertens function via M(x) = 1 - sum_{i=2}^{x} M(floor(x / i)), the s = 0
/// case of the oscillatory sum identity. Values up to the table size come from
/// a sieved prefix table; larger quotient values floor(x / k) are evaluated
/// bottom-up and memoized by k, iterating i over quotient blocks.
class SublinearMertens {
public:
    explicit SublinearMertens(std::uint64_t table_size);

    /// The default table size for x: max(ceil(x^(2/3)), 1024), capped at x.
    static std::uint64_t threshold_for(std::uint64_t x);

    std::uint64_t table_size() const { return prefix_.size() - 1; }

    /// M(x). Thread-safe: the memo is local to each call.
    std::int64_t operator()(std::uint64_t x) const;

private:
    std::vector<std::int32_t> prefix_;
};

/// M(x) with a table sized by SublinearMertens::threshold_for(x).
std::int64_t mertens_sublinear(std::uint64_t x);

} // namespace mertens
