#include "mertens/sequences/sublinear.hpp"

#include "mertens/arith/mobius.hpp"
#include "mertens/budget.hpp"
#include "mertens/errors.hpp"
#include "mertens/int128.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mertens {

namespace {

constexpr std::uint64_t kMinTable = 1024;

} // namespace

SublinearMertens::SublinearMertens(std::uint64_t table_size)
{
    table_size = std::max<std::uint64_t>(table_size, 1);
    if (table_size >= static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
        throw CapacityError("sublinear Mertens table limited to 2^31 - 1 entries");
    require_capacity(table_size * 4, "sublinear Mertens table of " + std::to_string(table_size));
    MobiusTable mu = mobius_sieve(table_size);
    prefix_.resize(table_size + 1);
    prefix_[0] = 0;
    for (std::uint64_t k = 1; k <= table_size; ++k)
        prefix_[k] = prefix_[k - 1] + mu[k];
}

std::uint64_t SublinearMertens::threshold_for(std::uint64_t x)
{
    // smallest t with t^3 >= x^2
    const u128 target = static_cast<u128>(x) * x;
    auto t = static_cast<std::uint64_t>(std::ceil(std::cbrt(static_cast<long double>(x) * x)));
    auto cube = [](std::uint64_t v) { return static_cast<u128>(v) * v * v; };
    while (t > 0 && cube(t - 1) >= target)
        --t;
    while (cube(t) < target)
        ++t;
    return std::min(std::max(t, kMinTable), std::max<std::uint64_t>(x, 1));
}

std::int64_t SublinearMertens::operator()(std::uint64_t x) const
{
    const std::uint64_t table = table_size();
    if (x <= table)
        return prefix_[x];

    // big[k] = M(floor(x / k)) for every k with floor(x / k) > table.
    const std::uint64_t kmax = x / (table + 1);
    require_capacity((kmax + 1) * 8, "sublinear Mertens memo");
    std::vector<std::int64_t> big(kmax + 1, 0);
    for (std::uint64_t k = kmax; k >= 1; --k) {
        const std::uint64_t v = x / k;
        std::int64_t sum = 1;
        for (std::uint64_t i = 2; i <= v;) {
            const std::uint64_t q = v / i;
            const std::uint64_t i_hi = v / q;
            const std::int64_t mq = q <= table ? prefix_[q] : big[k * i];
            sum -= static_cast<std::int64_t>(i_hi - i + 1) * mq;
            i = i_hi + 1;
        }
        big[k] = sum;
    }
    return big[1];
}

std::int64_t mertens_sublinear(std::uint64_t x)
{
    if (x == 0)
        throw PreconditionError("mertens_sublinear requires x >= 1");
    SublinearMertens m(SublinearMertens::threshold_for(x));
    return m(x);
}

} // namespace mertens
