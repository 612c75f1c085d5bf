#include "mertens/identities/convolution.hpp"

#include "mertens/budget.hpp"
#include "mertens/errors.hpp"

#include <algorithm>
#include <string>

namespace mertens {

std::int64_t ConvolutionCoefficients::at(std::uint64_t p) const
{
    auto it = std::lower_bound(coeffs.begin(), coeffs.end(), p,
                               [](const auto& entry, std::uint64_t key) { return entry.first < key; });
    return it != coeffs.end() && it->first == p ? it->second : 0;
}

ConvolutionCoefficients convolution_coeffs(std::uint64_t x, ConvolutionKind kind)
{
    if (x == 0)
        throw PreconditionError("convolution_coeffs requires x >= 1");
    return convolution_coeffs(x, kind, mobius_sieve(x));
}

ConvolutionCoefficients convolution_coeffs(std::uint64_t x, ConvolutionKind kind, const MobiusTable& mu)
{
    if (x == 0)
        throw PreconditionError("convolution_coeffs requires x >= 1");
    if (x > (std::uint64_t{1} << 31))
        throw CapacityError("convolution_coeffs: x too large");
    if (kind == ConvolutionKind::mobius && (!mu.contains(1) || !mu.contains(x)))
        throw OutOfRange("mobius table must cover [1, x]");
    const std::uint64_t n = x * x;
    require_capacity((n + 1) * 4, "convolution coefficients for x = " + std::to_string(x));

    std::vector<std::int32_t> dense(n + 1, 0);
    for (std::uint64_t i = 1; i <= x; ++i) {
        int mi = kind == ConvolutionKind::plain ? 1 : mu[i];
        if (mi == 0)
            continue;
        for (std::uint64_t j = 1; j <= x; ++j) {
            if (kind == ConvolutionKind::plain) {
                ++dense[i * j];
            } else if (int mj = mu[j]; mj != 0) {
                dense[i * j] += mi * mj;
            }
        }
    }
    ConvolutionCoefficients out{x, kind, {}};
    for (std::uint64_t p = 1; p <= n; ++p)
        if (dense[p] != 0)
            out.coeffs.emplace_back(p, dense[p]);
    return out;
}

} // namespace mertens
