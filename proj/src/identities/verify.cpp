#include "mertens/identities/verify.hpp"

#include "mertens/arith/exact_sum.hpp"
#include "mertens/arith/quotient.hpp"
#include "mertens/errors.hpp"
#include "mertens/identities/convolution.hpp"
#include "mertens/sequences/evaluators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <type_traits>

namespace mertens {

namespace {

constexpr std::array kIdentities = {IdentityId::eq1,  IdentityId::eq2,  IdentityId::eq3,  IdentityId::eq5,
                                    IdentityId::eq6,  IdentityId::eq7,  IdentityId::eq11, IdentityId::eq12,
                                    IdentityId::eq13, IdentityId::eq15, IdentityId::eq16, IdentityId::eq17,
                                    IdentityId::eq18};

// Integer arithmetic for exact s = 0: every weight 1/k^0 is 1.
struct IntPolicy {
    using Value = i128;
    using Acc = i128;
    static constexpr bool kGroupBlocks = true;
    static constexpr ResidualKind kKind = ResidualKind::exact;

    const SequenceCache& cache;

    Value weight(std::uint64_t) const { return 1; }
    Value osc(std::uint64_t k) const { return cache.mertens(k); }
    Value harm(std::uint64_t k) const { return static_cast<i128>(k); }
    Value one() const { return 1; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }

    Acc zero() const { return 0; }
    void add(Acc& acc, const Value& v, std::int64_t m = 1) const { acc += v * m; }
    Acc diff(const Acc& a, const Acc& b) const { return a - b; }
    Number number(const Acc& a) const { return a; }
    bool same(const Acc& a, const Acc& b, double) const { return a == b; }
};

// Exact s = 1 arithmetic in Z[1/L], L = lcm(1..n) of the exact tables. A value
// is num / L^power; sums are kept per power and combined once at the end.
struct Scaled {
    mpz_class num;
    int power = 0;
};

struct RationalPolicy {
    static constexpr int kMaxPower = 3;
    using Value = Scaled;
    struct Acc {
        std::array<mpz_class, kMaxPower + 1> by_power;
    };
    static constexpr bool kGroupBlocks = true;
    static constexpr ResidualKind kKind = ResidualKind::exact;

    const ExactPrefix& ex;
    std::array<mpz_class, kMaxPower + 1> lpow;

    explicit RationalPolicy(const ExactPrefix& prefix) : ex(prefix)
    {
        lpow[0] = 1;
        for (int p = 1; p <= kMaxPower; ++p)
            lpow[p] = lpow[p - 1] * ex.common_denominator();
    }

    Value weight(std::uint64_t k) const { return {ex.reciprocal(k), 1}; }
    Value osc(std::uint64_t k) const { return {ex.oscillatory_numerator(k), 1}; }
    Value harm(std::uint64_t k) const { return {ex.harmonic_numerator(k), 1}; }
    Value one() const { return {mpz_class(1), 0}; }
    Value mul(const Value& a, const Value& b) const
    {
        if (a.power + b.power > kMaxPower)
            throw Error("exact product exceeds the supported power of the common denominator");
        return {a.num * b.num, a.power + b.power};
    }
    Value sub(const Value& a, const Value& b) const
    {
        int p = std::max(a.power, b.power);
        return {a.num * lpow[p - a.power] - b.num * lpow[p - b.power], p};
    }

    Acc zero() const { return {}; }
    void add(Acc& acc, const Value& v, std::int64_t m = 1) const
    {
        if (m == 1)
            acc.by_power[v.power] += v.num;
        else
            acc.by_power[v.power] += v.num * static_cast<long>(m);
    }
    Acc diff(const Acc& a, const Acc& b) const
    {
        Acc out;
        for (int p = 0; p <= kMaxPower; ++p)
            out.by_power[p] = a.by_power[p] - b.by_power[p];
        return out;
    }
    Number number(const Acc& a) const
    {
        mpz_class total = 0;
        for (int p = 0; p <= kMaxPower; ++p)
            total += a.by_power[p] * lpow[kMaxPower - p];
        return ExactRational(total, lpow[kMaxPower]);
    }
    bool same(const Acc& a, const Acc& b, double) const
    {
        return std::get<ExactRational>(number(diff(a, b))).is_zero();
    }
};

// Double precision with prefix tables built by compensated ascending sums.
// Every multi-term sum goes through ExactSum, so results do not depend on
// summation order or grouping.
struct FloatPolicy {
    using Value = double;
    using Acc = ExactSum;
    static constexpr bool kGroupBlocks = false;
    static constexpr ResidualKind kKind = ResidualKind::floating;

    const SequenceCache& cache;
    double s;

    Value weight(std::uint64_t k) const { return inverse_power(k, s); }
    Value osc(std::uint64_t k) const { return k == 0 ? 0.0 : cache.oscillatory(k, s); }
    Value harm(std::uint64_t k) const { return k == 0 ? 0.0 : cache.harmonic(k, s); }
    Value one() const { return 1.0; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }

    Acc zero() const { return {}; }
    void add(Acc& acc, const Value& v, std::int64_t m = 1) const { acc.add(v, m); }
    Acc diff(const Acc& a, const Acc& b) const
    {
        Acc out = a;
        out.add(b.negated());
        return out;
    }
    Number number(const Acc& a) const { return a.value(); }
    bool same(const Acc& a, const Acc& b, double tolerance) const
    {
        return std::fabs(diff(a, b).value()) <= tolerance;
    }
};

template <class P>
Residual make_residual(const P& pol, const typename P::Acc& lhs, const typename P::Acc& rhs)
{
    Residual r;
    r.kind = P::kKind;
    r.exact_value = pol.number(pol.diff(lhs, rhs));
    r.float_value = to_double(r.exact_value);
    r.lhs = pol.number(lhs);
    r.rhs = pol.number(rhs);
    return r;
}

std::uint64_t square(std::uint64_t x)
{
    if (x >= (std::uint64_t{1} << 32))
        throw PreconditionError("x^2 overflows 64 bits");
    return x * x;
}

// Picks the arithmetic for (s, mode) after checking the cache covers every
// sequence argument up to max_arg.
template <class Fn>
Residual with_policy(std::uint64_t x, double s, Mode mode, std::uint64_t max_arg, const SequenceCache& cache,
                     Fn&& fn)
{
    if (max_arg > cache.size())
        throw OutOfRange("sequence tables cover k <= " + std::to_string(cache.size()) + ", identity needs " +
                         std::to_string(max_arg));
    if (mode == Mode::exact) {
        require_exact_exponent(s);
        if (s == 0.0)
            return fn(IntPolicy{cache});
        if (x > cache.rational_bound())
            throw RationalBoundExceeded("exact s=1 checks are limited to x <= " +
                                        std::to_string(cache.rational_bound()));
        if (cache.exact_size() < max_arg)
            throw RationalBoundExceeded("exact s=1 tables cover k <= " + std::to_string(cache.exact_size()) +
                                        ", identity needs " + std::to_string(max_arg));
        return fn(RationalPolicy(*cache.exact()));
    }
    if (!cache.has_float(s))
        throw OutOfRange("no float tables for s = " + format_double(s));
    return fn(FloatPolicy{cache, s});
}

void require_triple_bound(std::uint64_t x, Mode mode, const VerifyOptions& opts)
{
    std::uint64_t bound = mode == Mode::exact ? opts.triple_exact_bound : opts.triple_float_bound;
    if (x > bound)
        throw PreconditionError("triple-sum check limited to x <= " + std::to_string(bound) + " in " +
                                std::string(to_string(mode)) + " mode");
}

void require_j(std::uint64_t x, std::uint64_t j)
{
    if (j < x || j > square(x))
        throw PreconditionError("j must satisfy x <= j <= x^2 (x = " + std::to_string(x) +
                                ", j = " + std::to_string(j) + ")");
}

void mark_inconsistent(Residual& r, const std::string& what)
{
    r.consistent = false;
    if (!r.detail.empty())
        r.detail += "; ";
    r.detail += what;
}

} // namespace

std::string_view to_string(IdentityId id)
{
    switch (id) {
    case IdentityId::eq1: return "eq1";
    case IdentityId::eq2: return "eq2";
    case IdentityId::eq3: return "eq3";
    case IdentityId::eq5: return "eq5";
    case IdentityId::eq6: return "eq6";
    case IdentityId::eq7: return "eq7";
    case IdentityId::eq11: return "eq11";
    case IdentityId::eq12: return "eq12";
    case IdentityId::eq13: return "eq13";
    case IdentityId::eq15: return "eq15";
    case IdentityId::eq16: return "eq16";
    case IdentityId::eq17: return "eq17";
    case IdentityId::eq18: return "eq18";
    }
    return "?";
}

IdentityId parse_identity(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (IdentityId id : kIdentities)
        if (to_string(id) == lower)
            return id;
    throw PreconditionError("unknown identity '" + std::string(text) + "'");
}

std::span<const IdentityId> all_identities() { return kIdentities; }

bool reaches_square(IdentityId id)
{
    switch (id) {
    case IdentityId::eq1:
    case IdentityId::eq2:
    case IdentityId::eq11:
    case IdentityId::eq12:
        return false;
    default:
        return true;
    }
}

IdentityCase normalized(IdentityCase c)
{
    switch (c.id) {
    case IdentityId::eq6:
    case IdentityId::eq17:
        c.s = 0.0;
        c.mode = Mode::exact;
        break;
    case IdentityId::eq7:
    case IdentityId::eq16:
        c.s = 1.0;
        break;
    case IdentityId::eq18:
        c.s = 0.0;
        break;
    default:
        break;
    }
    return c;
}

void validate(const IdentityCase& c)
{
    if (c.x == 0)
        throw PreconditionError("x must be >= 1");
    if (!std::isfinite(c.s))
        throw PreconditionError("s must be finite");
    bool wants_j = c.id == IdentityId::eq2 || c.id == IdentityId::eq12;
    if (wants_j != c.j.has_value())
        throw PreconditionError(std::string(to_string(c.id)) +
                                (wants_j ? " requires j" : " does not take j"));
    if (reaches_square(c.id) || wants_j)
        square(c.x);
    if (c.j)
        require_j(c.x, *c.j);
    if (c.mode == Mode::exact && c.id != IdentityId::eq18)
        require_exact_exponent(c.s);
}

Residual verify_eq1(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    return with_policy(x, s, mode, x, cache, [&](const auto& pol) {
        using P = std::decay_t<decltype(pol)>;
        auto lhs = pol.zero();
        if constexpr (P::kGroupBlocks) {
            for_each_quotient_block(x, [&](const QuotientBlock& b) {
                pol.add(lhs, pol.mul(pol.sub(pol.harm(b.i_hi), pol.harm(b.i_lo - 1)), pol.osc(b.q)));
            });
        } else {
            for (std::uint64_t i = 1; i <= x; ++i)
                pol.add(lhs, pol.mul(pol.weight(i), pol.osc(x / i)));
        }
        auto rhs = pol.zero();
        pol.add(rhs, pol.one());
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq2(std::uint64_t x, std::uint64_t j, double s, Mode mode, const SequenceCache& cache,
                    const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    require_j(x, j);
    const u128 n = static_cast<u128>(x) * x;
    return with_policy(x, s, mode, static_cast<std::uint64_t>(n / j), cache, [&](const auto& pol) {
        auto lhs = pol.zero();
        for (std::uint64_t i = 1; i <= x; ++i) {
            auto arg = static_cast<std::uint64_t>(n / (static_cast<u128>(j) * i));
            if (arg == 0)
                break;
            pol.add(lhs, pol.mul(pol.weight(i), pol.osc(arg)));
        }
        auto rhs = pol.zero();
        pol.add(rhs, pol.one());
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq3(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions& opts)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    require_triple_bound(x, mode, opts);
    const std::uint64_t n = square(x);
    return with_policy(x, s, mode, n, cache, [&](const auto& pol) {
        // j outermost, as first written
        auto outer_j = pol.zero();
        for (std::uint64_t j = x + 1; j <= n; ++j) {
            auto wj = pol.weight(j);
            for (std::uint64_t i = 1; i <= x; ++i) {
                std::uint64_t arg = n / (j * i);
                if (arg == 0)
                    break;
                pol.add(outer_j, pol.mul(pol.mul(wj, pol.weight(i)), pol.osc(arg)));
            }
        }
        // i outermost, with the nested floor floor(floor(x^2 / i) / j)
        auto outer_i = pol.zero();
        // sum_i w_i (1 - sum_{j<=x} w_j M_{(x^2/i)/j}), which uses eq1 at x^2 / i
        auto complement = pol.zero();
        for (std::uint64_t i = 1; i <= x; ++i) {
            auto wi = pol.weight(i);
            const std::uint64_t inner = n / i;
            for (std::uint64_t j = x + 1; j <= n; ++j) {
                std::uint64_t arg = inner / j;
                if (arg == 0)
                    break;
                pol.add(outer_i, pol.mul(pol.mul(wi, pol.weight(j)), pol.osc(arg)));
            }
            pol.add(complement, wi);
            for (std::uint64_t j = 1; j <= x; ++j)
                pol.add(complement, pol.mul(pol.mul(wi, pol.weight(j)), pol.osc(inner / j)), -1);
        }
        // H_x(s) - sum_{i,j<=x} M_{x^2/(ij)}(s) / (ij)^s
        auto collapsed = pol.zero();
        pol.add(collapsed, pol.harm(x));
        for (std::uint64_t i = 1; i <= x; ++i)
            for (std::uint64_t j = 1; j <= x; ++j)
                pol.add(collapsed, pol.mul(pol.weight(i * j), pol.osc(n / (i * j))), -1);

        auto rhs = pol.zero();
        pol.add(rhs, pol.harm(n));
        pol.add(rhs, pol.harm(x), -1);
        Residual r = make_residual(pol, outer_j, rhs);
        if (!pol.same(outer_j, outer_i, opts.tolerance))
            mark_inconsistent(r, "swapped summation order disagrees");
        if (!pol.same(outer_j, complement, opts.tolerance))
            mark_inconsistent(r, "complement form disagrees");
        if (!pol.same(outer_j, collapsed, opts.tolerance))
            mark_inconsistent(r, "collapsed double-sum form disagrees");
        return r;
    });
}

Residual verify_eq5(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    const std::uint64_t n = square(x);
    return with_policy(x, s, mode, n, cache, [&](const auto& pol) {
        auto coeffs = convolution_coeffs(x, ConvolutionKind::plain, cache.mobius());
        auto lhs = pol.zero();
        pol.add(lhs, pol.harm(n));
        auto rhs = pol.zero();
        pol.add(rhs, pol.harm(x), 2);
        for (const auto& [p, c] : coeffs.coeffs)
            pol.add(rhs, pol.mul(pol.weight(p), pol.osc(n / p)), -c);
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq6(std::uint64_t x, const SequenceCache& cache) { return verify_eq5(x, 0.0, Mode::exact, cache); }

Residual verify_eq7(std::uint64_t x, Mode mode, const SequenceCache& cache, const VerifyOptions& opts)
{
    return verify_eq5(x, 1.0, mode, cache, opts);
}

Residual verify_eq11(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    return with_policy(x, s, mode, x, cache, [&](const auto& pol) {
        using P = std::decay_t<decltype(pol)>;
        auto lhs = pol.zero();
        if constexpr (P::kGroupBlocks) {
            // sum of mu(i) / i^s over a block is M_hi(s) - M_{lo-1}(s)
            for_each_quotient_block(x, [&](const QuotientBlock& b) {
                pol.add(lhs, pol.mul(pol.sub(pol.osc(b.i_hi), pol.osc(b.i_lo - 1)), pol.harm(b.q)));
            });
        } else {
            for (std::uint64_t i = 1; i <= x; ++i)
                if (int m = cache.mu(i); m != 0)
                    pol.add(lhs, pol.mul(pol.weight(i), pol.harm(x / i)), m);
        }
        auto rhs = pol.zero();
        pol.add(rhs, pol.one());
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq12(std::uint64_t x, std::uint64_t j, double s, Mode mode, const SequenceCache& cache,
                     const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    require_j(x, j);
    const u128 n = static_cast<u128>(x) * x;
    return with_policy(x, s, mode, static_cast<std::uint64_t>(n / j), cache, [&](const auto& pol) {
        auto lhs = pol.zero();
        for (std::uint64_t i = 1; i <= x; ++i) {
            auto arg = static_cast<std::uint64_t>(n / (static_cast<u128>(j) * i));
            if (arg == 0)
                break;
            if (int m = cache.mu(i); m != 0)
                pol.add(lhs, pol.mul(pol.weight(i), pol.harm(arg)), m);
        }
        auto rhs = pol.zero();
        pol.add(rhs, pol.one());
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq13(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions& opts)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    require_triple_bound(x, mode, opts);
    const std::uint64_t n = square(x);
    return with_policy(x, s, mode, n, cache, [&](const auto& pol) {
        auto outer_j = pol.zero();
        for (std::uint64_t j = x + 1; j <= n; ++j) {
            int mj = cache.mu(j);
            if (mj == 0)
                continue;
            auto wj = pol.weight(j);
            for (std::uint64_t i = 1; i <= x; ++i) {
                std::uint64_t arg = n / (j * i);
                if (arg == 0)
                    break;
                if (int mi = cache.mu(i); mi != 0)
                    pol.add(outer_j, pol.mul(pol.mul(wj, pol.weight(i)), pol.harm(arg)), mj * mi);
            }
        }
        auto outer_i = pol.zero();
        // sum_i mu_i w_i (1 - sum_{j<=x} mu_j w_j H_{(x^2/i)/j}), which uses eq11 at x^2 / i
        auto complement = pol.zero();
        for (std::uint64_t i = 1; i <= x; ++i) {
            int mi = cache.mu(i);
            if (mi == 0)
                continue;
            auto wi = pol.weight(i);
            const std::uint64_t inner = n / i;
            for (std::uint64_t j = x + 1; j <= n; ++j) {
                std::uint64_t arg = inner / j;
                if (arg == 0)
                    break;
                if (int mj = cache.mu(j); mj != 0)
                    pol.add(outer_i, pol.mul(pol.mul(wi, pol.weight(j)), pol.harm(arg)), mi * mj);
            }
            pol.add(complement, wi, mi);
            for (std::uint64_t j = 1; j <= x; ++j)
                if (int mj = cache.mu(j); mj != 0)
                    pol.add(complement, pol.mul(pol.mul(wi, pol.weight(j)), pol.harm(inner / j)), -mi * mj);
        }
        auto collapsed = pol.zero();
        pol.add(collapsed, pol.osc(x));
        for (std::uint64_t i = 1; i <= x; ++i)
            for (std::uint64_t j = 1; j <= x; ++j)
                if (int m = cache.mu(i) * cache.mu(j); m != 0)
                    pol.add(collapsed, pol.mul(pol.weight(i * j), pol.harm(n / (i * j))), -m);

        auto rhs = pol.zero();
        pol.add(rhs, pol.osc(n));
        pol.add(rhs, pol.osc(x), -1);
        Residual r = make_residual(pol, outer_j, rhs);
        if (!pol.same(outer_j, outer_i, opts.tolerance))
            mark_inconsistent(r, "swapped summation order disagrees");
        if (!pol.same(outer_j, complement, opts.tolerance))
            mark_inconsistent(r, "complement form disagrees");
        if (!pol.same(outer_j, collapsed, opts.tolerance))
            mark_inconsistent(r, "collapsed double-sum form disagrees");
        return r;
    });
}

Residual verify_eq15(std::uint64_t x, double s, Mode mode, const SequenceCache& cache, const VerifyOptions&)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    const std::uint64_t n = square(x);
    return with_policy(x, s, mode, n, cache, [&](const auto& pol) {
        auto coeffs = convolution_coeffs(x, ConvolutionKind::mobius, cache.mobius());
        auto lhs = pol.zero();
        pol.add(lhs, pol.osc(n));
        auto rhs = pol.zero();
        pol.add(rhs, pol.osc(x), 2);
        for (const auto& [p, c] : coeffs.coeffs)
            pol.add(rhs, pol.mul(pol.weight(p), pol.harm(n / p)), -c);
        return make_residual(pol, lhs, rhs);
    });
}

Residual verify_eq16(std::uint64_t x, Mode mode, const SequenceCache& cache, const VerifyOptions& opts)
{
    return verify_eq15(x, 1.0, mode, cache, opts);
}

Residual verify_eq17(std::uint64_t x, const SequenceCache& cache) { return verify_eq15(x, 0.0, Mode::exact, cache); }

Residual verify_eq18(std::uint64_t x, const SequenceCache& cache, const VerifyOptions& opts)
{
    if (x == 0)
        throw PreconditionError("x must be >= 1");
    const std::uint64_t n = square(x);
    if (n > cache.size())
        throw OutOfRange("sequence tables cover k <= " + std::to_string(cache.size()) + ", identity needs " +
                         std::to_string(n));
    const auto coeffs = convolution_coeffs(x, ConvolutionKind::mobius, cache.mobius());
    const std::int64_t m_sq = cache.mertens(n);
    const std::int64_t m_x = cache.mertens(x);

    // Floor side of eq17, and the term-by-term identity floor(v) = v - frac(v)
    // with v = n / p, cleared of the denominator p.
    i128 floor_sum = 0;
    bool termwise = true;
    for (const auto& [p, c] : coeffs.coeffs) {
        const std::uint64_t q = n / p;
        const std::uint64_t r = n % p;
        floor_sum += static_cast<i128>(c) * q;
        termwise = termwise && static_cast<u128>(q) * p == static_cast<u128>(n - r);
    }

    Residual out;
    if (x <= cache.rational_bound()) {
        ExactRational m1;
        if (cache.exact_size() >= x) {
            m1 = cache.exact()->oscillatory(x);
        } else {
            for (std::uint64_t k = 1; k <= x; ++k)
                if (int m = cache.mu(k); m != 0)
                    m1 += ExactRational(m, static_cast<std::int64_t>(k));
        }
        mpz_class denom = 1;
        for (const auto& entry : coeffs.coeffs)
            mpz_lcm_ui(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(entry.first));
        mpz_class frac_num = 0;
        mpz_class share;
        for (const auto& [p, c] : coeffs.coeffs) {
            const std::uint64_t r = n % p;
            if (r == 0)
                continue;
            mpz_divexact_ui(share.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(p));
            frac_num += share * static_cast<long>(c) * static_cast<unsigned long>(r);
        }
        const ExactRational frac_sum(frac_num, denom);
        const ExactRational square_term = ExactRational(static_cast<std::int64_t>(n)) * m1 * m1;
        const ExactRational rhs = ExactRational(2 * m_x) - square_term + frac_sum;

        out.kind = ResidualKind::exact;
        out.lhs = i128{m_sq};
        out.rhs = rhs;
        ExactRational diff = ExactRational(m_sq) - rhs;
        out.float_value = diff.to_double();
        out.exact_value = std::move(diff);
        if (ExactRational(floor_sum) != square_term - frac_sum)
            mark_inconsistent(out, "floor and fractional-part forms disagree");
    } else {
        if (!cache.has_float(1.0))
            throw OutOfRange("eq18 beyond the rational bound needs an s = 1 float table");
        const double m1 = cache.oscillatory(x, 1.0);
        ExactSum frac_sum;
        for (const auto& [p, c] : coeffs.coeffs)
            frac_sum.add(static_cast<double>(n % p) / static_cast<double>(p), c);
        const double square_term = static_cast<double>(n) * m1 * m1;
        ExactSum lhs;
        lhs.add(static_cast<double>(m_sq));
        ExactSum rhs;
        rhs.add(static_cast<double>(m_x), 2);
        rhs.subtract(square_term);
        rhs.add(frac_sum);
        ExactSum diff = lhs;
        diff.add(rhs.negated());

        out.kind = ResidualKind::floating;
        out.lhs = lhs.value();
        out.rhs = rhs.value();
        out.float_value = diff.value();
        out.exact_value = out.float_value;
        ExactSum forms;
        forms.add(static_cast<double>(floor_sum));
        forms.subtract(square_term);
        forms.add(frac_sum);
        if (!(std::fabs(forms.value()) <= opts.tolerance))
            mark_inconsistent(out, "floor and fractional-part forms disagree");
    }
    if (!termwise)
        mark_inconsistent(out, "floor(v) != v - frac(v) for some term");
    return out;
}

Residual verify(const IdentityCase& raw, const SequenceCache& cache, const VerifyOptions& opts)
{
    const IdentityCase c = normalized(raw);
    validate(c);
    switch (c.id) {
    case IdentityId::eq1: return verify_eq1(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq2: return verify_eq2(c.x, *c.j, c.s, c.mode, cache, opts);
    case IdentityId::eq3: return verify_eq3(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq5: return verify_eq5(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq6: return verify_eq6(c.x, cache);
    case IdentityId::eq7: return verify_eq7(c.x, c.mode, cache, opts);
    case IdentityId::eq11: return verify_eq11(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq12: return verify_eq12(c.x, *c.j, c.s, c.mode, cache, opts);
    case IdentityId::eq13: return verify_eq13(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq15: return verify_eq15(c.x, c.s, c.mode, cache, opts);
    case IdentityId::eq16: return verify_eq16(c.x, c.mode, cache, opts);
    case IdentityId::eq17: return verify_eq17(c.x, cache);
    case IdentityId::eq18: return verify_eq18(c.x, cache, opts);
    }
    throw PreconditionError("unknown identity");
}

bool exact_s1_feasible(IdentityId id, std::uint64_t x, std::uint64_t rational_bound, std::uint64_t exact_cap)
{
    if (x > rational_bound)
        return false;
    if (id == IdentityId::eq18)
        return true;
    std::uint64_t arg = reaches_square(id) ? square(x) : x;
    return arg <= exact_cap;
}

SequenceOptions cache_requirements(std::span<const IdentityCase> cases, std::uint64_t rational_bound,
                                   std::uint64_t exact_cap)
{
    SequenceOptions opts;
    opts.rational_bound = rational_bound;
    auto want_float = [&](double s) {
        if (std::find(opts.float_exponents.begin(), opts.float_exponents.end(), s) == opts.float_exponents.end())
            opts.float_exponents.push_back(s);
    };
    for (const IdentityCase& raw : cases) {
        const IdentityCase c = normalized(raw);
        validate(c);
        const std::uint64_t arg = reaches_square(c.id) ? square(c.x) : c.x;
        opts.table_size = std::max(opts.table_size, arg);
        if (c.id == IdentityId::eq18) {
            if (c.x > rational_bound)
                want_float(1.0);
            continue;
        }
        if (c.mode == Mode::floating) {
            want_float(c.s);
        } else if (c.s == 1.0) {
            const std::uint64_t need = reaches_square(c.id) ? square(c.x) : c.x;
            if (c.x <= rational_bound && need <= exact_cap)
                opts.exact_size = std::max(opts.exact_size, need);
        }
    }
    std::sort(opts.float_exponents.begin(), opts.float_exponents.end());
    return opts;
}

} // namespace mertens
