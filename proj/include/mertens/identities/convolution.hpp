#pragma once

#include "mertens/arith/mobius.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mertens {

enum class ConvolutionKind { plain, mobius };

/// The double sum over (i, j) in [1, x]^2 collapsed onto p = i * j.
///   plain:  c_p = #{(i, j) : i * j = p}
///   mobius: c_p = sum over those pairs of mu(i) * mu(j)
/// Only nonzero coefficients are stored, in ascending p.
struct ConvolutionCoefficients {
    std::uint64_t x = 0;
    ConvolutionKind kind = ConvolutionKind::plain;
    std::vector<std::pair<std::uint64_t, std::int64_t>> coeffs;

    /// c_p, zero when absent.
    std::int64_t at(std::uint64_t p) const;
};

ConvolutionCoefficients convolution_coeffs(std::uint64_t x, ConvolutionKind kind);
/// Uses the given table for mu; it must cover [1, x].
ConvolutionCoefficients convolution_coeffs(std::uint64_t x, ConvolutionKind kind, const MobiusTable& mu);

} // namespace mertens
