#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mertens {

/// Möbius values mu(k) for the contiguous range k = lo .. hi.
class MobiusTable {
public:
    MobiusTable() = default;
    MobiusTable(std::uint64_t lo, std::vector<std::int8_t> values);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return lo_ + values_.size() - 1; }
    std::size_t size() const { return values_.size(); }
    bool contains(std::uint64_t k) const { return k >= lo_ && k - lo_ < values_.size(); }

    /// Unchecked access; k must lie in [lo, hi].
    int operator[](std::uint64_t k) const { return values_[k - lo_]; }
    /// Checked access; throws OutOfRange.
    int at(std::uint64_t k) const;

    std::span<const std::int8_t> values() const { return values_; }

private:
    std::uint64_t lo_ = 1;
    std::vector<std::int8_t> values_;
};

/// Primes p <= n in ascending order.
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

/// Linear sieve over [1, n].
MobiusTable mobius_sieve(std::uint64_t n);

/// Segmented sieve over [lo, hi]; agrees with mobius_sieve(hi) on the range.
MobiusTable mobius_segment(std::uint64_t lo, std::uint64_t hi);

/// Fills out[k - lo] = mu(k) for k in [lo, lo + out.size()). `primes` must
/// contain every prime up to sqrt(lo + out.size() - 1). `scratch` is resized
/// as needed and may be reused across calls.
void fill_mobius_segment(std::uint64_t lo, std::span<std::int8_t> out,
                         std::span<const std::uint32_t> primes,
                         std::vector<std::uint64_t>& scratch);

/// Supplies mu over consecutive segments. Called with (lo, out) and must fill
/// out[k - lo] for the segment. Lets callers stream [1, N] or substitute a
/// synthetic sequence.
using MobiusSource = std::function<void(std::uint64_t lo, std::span<std::int8_t> out)>;

/// Streams the true Möbius function via the segmented sieve, for ranges up to `limit`.
MobiusSource sieve_source(std::uint64_t limit);

/// Visits [1, limit] in ascending segments of at most `segment` values.
void for_each_segment(std::uint64_t limit, std::uint64_t segment, const MobiusSource& source,
                      const std::function<void(std::uint64_t lo, std::span<const std::int8_t>)>& visit);

/// Maximum segment length accepted by mobius_segment (bounded by the memory budget).
std::uint64_t max_segment_length();

} // namespace mertens
