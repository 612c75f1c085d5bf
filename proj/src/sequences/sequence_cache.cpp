#include "mertens/sequences/sequence_cache.hpp"

#include "mertens/arith/exact_sum.hpp"
#include "mertens/budget.hpp"
#include "mertens/errors.hpp"
#include "mertens/sequences/sublinear.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mertens {

std::string_view to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text)
{
    if (text == "exact")
        return Mode::exact;
    if (text == "float")
        return Mode::floating;
    throw PreconditionError("mode must be 'exact' or 'float', got '" + std::string(text) + "'");
}

double inverse_power(std::uint64_t k, double s)
{
    if (s == 0.0)
        return 1.0;
    if (s == 1.0)
        return 1.0 / static_cast<double>(k);
    return std::pow(static_cast<double>(k), -s);
}

ExactPrefix::ExactPrefix(const MobiusTable& mobius, std::uint64_t n) : n_(n)
{
    if (n == 0)
        throw PreconditionError("exact prefix tables need n >= 1");
    if (!mobius.contains(1) || !mobius.contains(n))
        throw OutOfRange("exact prefix tables need mu on [1, n]");
    // Three tables of n numerators, each about 1.44 n bits wide.
    long double entry = 1.4427L * static_cast<long double>(n) / 8.0L + 16.0L;
    require_capacity(static_cast<std::uint64_t>(3.0L * entry * static_cast<long double>(n + 1)),
                     "exact s=1 prefix tables up to " + std::to_string(n));

    lcm_ = 1;
    for (std::uint32_t p : primes_up_to(n)) {
        std::uint64_t power = p;
        while (power <= n / p)
            power *= p;
        lcm_ *= static_cast<unsigned long>(power);
    }
    reciprocal_.resize(n + 1);
    harmonic_.resize(n + 1);
    oscillatory_.resize(n + 1);
    harmonic_[0] = 0;
    oscillatory_[0] = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        mpz_divexact_ui(reciprocal_[k].get_mpz_t(), lcm_.get_mpz_t(), static_cast<unsigned long>(k));
        harmonic_[k] = harmonic_[k - 1] + reciprocal_[k];
        switch (mobius[k]) {
        case 1:
            oscillatory_[k] = oscillatory_[k - 1] + reciprocal_[k];
            break;
        case -1:
            oscillatory_[k] = oscillatory_[k - 1] - reciprocal_[k];
            break;
        default:
            oscillatory_[k] = oscillatory_[k - 1];
        }
    }
}

void ExactPrefix::check(std::uint64_t k) const
{
    if (k > n_)
        throw OutOfRange("exact table holds k <= " + std::to_string(n_) + ", asked for " +
                         std::to_string(k));
}

const mpz_class& ExactPrefix::reciprocal(std::uint64_t k) const
{
    check(k);
    if (k == 0)
        throw PreconditionError("reciprocal of zero");
    return reciprocal_[k];
}

const mpz_class& ExactPrefix::harmonic_numerator(std::uint64_t k) const
{
    check(k);
    return harmonic_[k];
}

const mpz_class& ExactPrefix::oscillatory_numerator(std::uint64_t k) const
{
    check(k);
    return oscillatory_[k];
}

ExactRational ExactPrefix::harmonic(std::uint64_t k) const
{
    return ExactRational(harmonic_numerator(k), lcm_);
}

ExactRational ExactPrefix::oscillatory(std::uint64_t k) const
{
    return ExactRational(oscillatory_numerator(k), lcm_);
}

SequenceCache::SequenceCache(const SequenceOptions& options)
    : n_(options.table_size), rational_bound_(options.rational_bound)
{
    if (n_ == 0)
        throw PreconditionError("sequence tables need size >= 1");
    if (n_ >= static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
        throw CapacityError("Mertens prefix table limited to 2^31 - 1 entries");
    require_capacity((n_ + 1) * (4 + 16 * options.float_exponents.size()), "sequence prefix tables");

    mobius_ = std::make_shared<const MobiusTable>(mobius_sieve(n_));
    const MobiusTable& mu = *mobius_;

    mertens_.resize(n_ + 1);
    mertens_[0] = 0;
    for (std::uint64_t k = 1; k <= n_; ++k)
        mertens_[k] = mertens_[k - 1] + mu[k];

    for (double s : options.float_exponents) {
        if (!std::isfinite(s))
            throw PreconditionError("exponent must be finite");
        if (float_.count(s) != 0)
            continue;
        FloatTables t;
        t.oscillatory.resize(n_ + 1);
        t.harmonic.resize(n_ + 1);
        CompensatedSum osc;
        CompensatedSum harm;
        for (std::uint64_t k = 1; k <= n_; ++k) {
            double w = inverse_power(k, s);
            harm.add(w);
            if (mu[k] != 0)
                osc.add(mu[k] > 0 ? w : -w);
            t.harmonic[k] = harm.value();
            t.oscillatory[k] = osc.value();
        }
        float_.emplace(s, std::move(t));
    }

    if (options.exact_size > 0) {
        if (options.exact_size > n_)
            throw PreconditionError("exact table size exceeds the sieve table size");
        exact_ = std::make_unique<const ExactPrefix>(mu, options.exact_size);
    }
}

int SequenceCache::mu(std::uint64_t k) const { return mobius_->at(k); }

std::int64_t SequenceCache::mertens(std::uint64_t k) const
{
    if (k <= n_)
        return mertens_[k];
    auto it = large_.find(k);
    if (it != large_.end())
        return it->second;
    throw OutOfRange("M_" + std::to_string(k) + " is beyond the table of size " + std::to_string(n_));
}

const SequenceCache::FloatTables& SequenceCache::tables(double s) const
{
    auto it = float_.find(s);
    if (it == float_.end())
        throw OutOfRange("no float table built for s = " + std::to_string(s));
    return it->second;
}

double SequenceCache::oscillatory(std::uint64_t k, double s) const
{
    if (k > n_)
        throw OutOfRange("M_" + std::to_string(k) + "(s) is beyond the table");
    return tables(s).oscillatory[k];
}

double SequenceCache::harmonic(std::uint64_t k, double s) const
{
    if (k > n_)
        throw OutOfRange("H_" + std::to_string(k) + "(s) is beyond the table");
    return tables(s).harmonic[k];
}

void SequenceCache::memoize_large(const std::vector<std::uint64_t>& values)
{
    for (std::uint64_t v : values) {
        if (v <= n_ || large_.count(v) != 0)
            continue;
        large_.emplace(v, mertens_sublinear(v));
    }
}

} // namespace mertens
