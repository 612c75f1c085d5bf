#include "mertens/arith/mobius.hpp"

#include "mertens/arith/quotient.hpp"
#include "mertens/budget.hpp"
#include "mertens/errors.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <string>
#include <utility>

namespace mertens {

namespace {

// int8 value + uint64 product scratch per segment entry
constexpr std::uint64_t kSegmentBytesPerEntry = 9;
constexpr std::uint64_t kDefaultSegment = std::uint64_t{1} << 18;

} // namespace

MobiusTable::MobiusTable(std::uint64_t lo, std::vector<std::int8_t> values)
    : lo_(lo), values_(std::move(values))
{
    if (lo_ == 0)
        throw PreconditionError("MobiusTable range must start at 1 or above");
}

int MobiusTable::at(std::uint64_t k) const
{
    if (!contains(k))
        throw OutOfRange("mu(" + std::to_string(k) + ") is outside the table range");
    return values_[k - lo_];
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n)
{
    std::vector<std::uint32_t> primes;
    if (n < 2)
        return primes;
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("prime table limit exceeds 32-bit range");
    require_capacity(n / 8 + 1, "prime sieve");
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t m = i * i; m <= n; m += i)
            composite[m] = true;
    }
    return primes;
}

MobiusTable mobius_sieve(std::uint64_t n)
{
    if (n == 0)
        throw PreconditionError("mobius_sieve requires n >= 1");
    if (n >= std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("mobius_sieve limit exceeds 32-bit range; use mobius_segment");
    // mu bytes, composite bits, and roughly n / ln n primes of 4 bytes
    require_capacity(n + n / 8 + n / 2, "mobius_sieve(" + std::to_string(n) + ")");

    std::vector<std::int8_t> mu(n, 0);
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint32_t> primes;
    mu[0] = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            mu[i - 1] = -1;
        }
        for (std::uint32_t p : primes) {
            std::uint64_t ip = i * p;
            if (ip > n)
                break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip - 1] = 0;
                break;
            }
            mu[ip - 1] = static_cast<std::int8_t>(-mu[i - 1]);
        }
    }
    return MobiusTable(1, std::move(mu));
}

void fill_mobius_segment(std::uint64_t lo, std::span<std::int8_t> out,
                         std::span<const std::uint32_t> primes, std::vector<std::uint64_t>& scratch)
{
    const std::uint64_t len = out.size();
    if (len == 0)
        return;
    const std::uint64_t hi = lo + len - 1;
    scratch.assign(len, 1);
    std::fill(out.begin(), out.end(), std::int8_t{1});

    for (std::uint32_t p32 : primes) {
        const std::uint64_t p = p32;
        if (p * p > hi)
            break;
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
            out[m - lo] = static_cast<std::int8_t>(-out[m - lo]);
            scratch[m - lo] *= p;
        }
        const std::uint64_t sq = p * p;
        for (std::uint64_t m = (lo + sq - 1) / sq * sq; m <= hi; m += sq)
            out[m - lo] = 0;
    }
    // Whatever remains after dividing out small primes is one prime above sqrt(hi).
    for (std::uint64_t k = 0; k < len; ++k) {
        if (out[k] != 0 && scratch[k] != lo + k)
            out[k] = static_cast<std::int8_t>(-out[k]);
    }
}

std::uint64_t max_segment_length() { return memory_budget() / kSegmentBytesPerEntry; }

MobiusTable mobius_segment(std::uint64_t lo, std::uint64_t hi)
{
    if (lo == 0 || lo > hi)
        throw PreconditionError("mobius_segment requires 1 <= lo <= hi");
    const std::uint64_t len = hi - lo + 1;
    if (len > max_segment_length())
        throw CapacityError("segment length " + std::to_string(len) + " exceeds the memory budget");
    auto primes = primes_up_to(isqrt(hi));
    std::vector<std::int8_t> mu(len);
    std::vector<std::uint64_t> scratch;
    fill_mobius_segment(lo, mu, primes, scratch);
    return MobiusTable(lo, std::move(mu));
}

MobiusSource sieve_source(std::uint64_t limit)
{
    auto primes = std::make_shared<const std::vector<std::uint32_t>>(primes_up_to(isqrt(limit)));
    auto scratch = std::make_shared<std::vector<std::uint64_t>>();
    return [primes, scratch](std::uint64_t lo, std::span<std::int8_t> out) {
        fill_mobius_segment(lo, out, *primes, *scratch);
    };
}

void for_each_segment(std::uint64_t limit, std::uint64_t segment, const MobiusSource& source,
                      const std::function<void(std::uint64_t, std::span<const std::int8_t>)>& visit)
{
    if (segment == 0)
        segment = kDefaultSegment;
    segment = std::min(segment, std::max<std::uint64_t>(limit, 1));
    if (segment > max_segment_length())
        throw CapacityError("segment length exceeds the memory budget");
    std::vector<std::int8_t> buffer(segment);
    for (std::uint64_t lo = 1; lo <= limit; lo += segment) {
        std::uint64_t len = std::min(segment, limit - lo + 1);
        std::span<std::int8_t> out(buffer.data(), len);
        source(lo, out);
        visit(lo, out);
    }
}

} // namespace mertens
