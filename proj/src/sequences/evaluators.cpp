#include "mertens/sequences/evaluators.hpp"

#include "mertens/arith/exact_sum.hpp"
#include "mertens/errors.hpp"

#include <cmath>
#include <string>

namespace mertens {

namespace {

void require_rational_bound(std::uint64_t x, const EvalLimits& limits)
{
    if (x > limits.rational_bound)
        throw RationalBoundExceeded("exact s=1 evaluation limited to x <= " +
                                    std::to_string(limits.rational_bound) + ", got " +
                                    std::to_string(x));
}

enum class Kind { oscillatory, harmonic };

SequenceValue evaluate(Kind kind, std::uint64_t x, double s, Mode mode, const EvalLimits& limits)
{
    if (x == 0)
        throw PreconditionError("sequence argument must be >= 1");
    if (!std::isfinite(s))
        throw PreconditionError("exponent must be finite");
    SequenceValue out{s, x, {}};
    if (kind == Kind::harmonic && mode == Mode::exact && s == 0.0) {
        out.value = static_cast<std::int64_t>(x);
        return out;
    }
    MobiusTable mu;
    if (kind == Kind::oscillatory)
        mu = mobius_sieve(x);
    auto coefficient = [&](std::uint64_t k) { return kind == Kind::harmonic ? 1 : mu[k]; };

    if (mode == Mode::exact) {
        require_exact_exponent(s);
        if (s == 0.0) {
            std::int64_t sum = 0;
            for (std::uint64_t k = 1; k <= x; ++k)
                sum += coefficient(k);
            out.value = sum;
            return out;
        }
        require_rational_bound(x, limits);
        ExactRational sum;
        for (std::uint64_t k = 1; k <= x; ++k) {
            int c = coefficient(k);
            if (c != 0)
                sum += ExactRational(c, static_cast<std::int64_t>(k));
        }
        out.value = std::move(sum);
        return out;
    }

    CompensatedSum sum;
    for (std::uint64_t k = 1; k <= x; ++k) {
        int c = coefficient(k);
        if (c != 0) {
            double w = inverse_power(k, s);
            sum.add(c > 0 ? w : -w);
        }
    }
    out.value = sum.value();
    return out;
}

} // namespace

double SequenceValue::to_double() const
{
    if (const auto* i = std::get_if<std::int64_t>(&value))
        return static_cast<double>(*i);
    if (const auto* r = std::get_if<ExactRational>(&value))
        return r->to_double();
    return std::get<double>(value);
}

void require_exact_exponent(double s)
{
    if (s != 0.0 && s != 1.0)
        throw UnsupportedExactExponent("exact mode supports s = 0 or s = 1 only, got s = " +
                                       std::to_string(s));
}

std::int64_t mertens_value(std::uint64_t x, const SequenceCache& cache)
{
    if (x == 0)
        throw PreconditionError("mertens_value requires x >= 1");
    if (x > cache.size())
        throw OutOfRange("M_" + std::to_string(x) + " is beyond the table of size " +
                         std::to_string(cache.size()));
    return cache.mertens(x);
}

OscillatoryValue oscillatory(std::uint64_t x, double s, Mode mode, const EvalLimits& limits)
{
    return evaluate(Kind::oscillatory, x, s, mode, limits);
}

SequenceValue harmonic(std::uint64_t x, double s, Mode mode, const EvalLimits& limits)
{
    return evaluate(Kind::harmonic, x, s, mode, limits);
}

double harmonic_asymptotic(std::uint64_t x)
{
    if (x < 2)
        throw PreconditionError("harmonic_asymptotic requires x >= 2");
    return std::log(static_cast<double>(x)) + kEulerGamma;
}

} // namespace mertens
