#pragma once

#include "mertens/arith/exact_rational.hpp"
#include "mertens/sequences/sequence_cache.hpp"

#include <cstdint>
#include <string_view>
#include <variant>

namespace mertens {

/// Euler's constant to 50 significant digits.
inline constexpr std::string_view kEulerGammaDigits =
    "0.57721566490153286060651209008240243104215933593992";
/// Euler's constant rounded to double.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104215933593992;

/// A value of M_x(s) or H_x(s). The representation follows the request:
/// integer for exact s = 0, rational for exact s = 1, double for float mode.
struct SequenceValue {
    double s = 0.0;
    std::uint64_t x = 0;
    std::variant<std::int64_t, ExactRational, double> value;

    Mode mode() const { return std::holds_alternative<double>(value) ? Mode::floating : Mode::exact; }
    double to_double() const;
};

using OscillatoryValue = SequenceValue;

/// Limits applied by the standalone evaluators.
struct EvalLimits {
    std::uint64_t rational_bound = kDefaultRationalBound;
};

/// M_x = sum_{k <= x} mu(k) from the cache's prefix table.
std::int64_t mertens_value(std::uint64_t x, const SequenceCache& cache);

/// M_x(s) = sum_{k <= x} mu(k) / k^s.
OscillatoryValue oscillatory(std::uint64_t x, double s, Mode mode, const EvalLimits& limits = {});

/// H_x(s) = sum_{k <= x} 1 / k^s.
SequenceValue harmonic(std::uint64_t x, double s, Mode mode, const EvalLimits& limits = {});

/// log(x) + gamma; differs from H_x by about 1 / (2x).
double harmonic_asymptotic(std::uint64_t x);

/// Throws UnsupportedExactExponent unless s is 0 or 1.
void require_exact_exponent(double s);

} // namespace mertens
