#include "mertens/induction/induction.hpp"

#include "mertens/arith/quotient.hpp"
#include "mertens/budget.hpp"
#include "mertens/errors.hpp"
#include "mertens/identities/convolution.hpp"
#include "mertens/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace mertens {

namespace {

std::uint64_t magnitude(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

void require_x(std::uint64_t x)
{
    if (x < kFirstY)
        throw PreconditionError("sup ranges start at y = 3; need x >= 3, got " + std::to_string(x));
}

// Running maxima for every x in [3, x_max]; entry x holds the record for [3, x].
std::vector<SupRecord> running_records(const MertensSamples& samples)
{
    const std::uint64_t x_max = samples.x_max();
    std::vector<SupRecord> out(x_max + 1);
    SupRecord cur;
    for (std::uint64_t y = kFirstY; y <= x_max; ++y) {
        cur.x = y;
        if (std::uint64_t m = magnitude(samples.mertens(y)); y == kFirstY || m > cur.sup_M) {
            cur.sup_M = m;
            cur.argmax_y = y;
        }
        if (std::uint64_t m = magnitude(samples.mertens_square(y)); y == kFirstY || m > cur.sup_M_sq) {
            cur.sup_M_sq = m;
            cur.argmax_y_sq = y;
        }
        out[y] = cur;
    }
    return out;
}

std::vector<std::uint64_t> row_points(std::uint64_t x_max, const InductionOptions& options,
                                      const std::vector<SupRecord>& records)
{
    std::set<std::uint64_t> points;
    const std::uint64_t dense = std::min(options.dense_limit, x_max);
    for (std::uint64_t x = kFirstY; x <= dense; ++x)
        points.insert(x);
    if (options.points_per_decade > 0) {
        for (unsigned k = 0;; ++k) {
            const double v = std::pow(10.0, static_cast<double>(k) / options.points_per_decade);
            const auto x = static_cast<std::uint64_t>(std::llround(v));
            if (x > x_max)
                break;
            if (x >= kFirstY)
                points.insert(x);
        }
    }
    for (std::uint64_t x = std::max<std::uint64_t>(dense + 1, kFirstY + 1); x <= x_max; ++x)
        if (records[x].sup_M > records[x - 1].sup_M)
            points.insert(x);
    points.insert(x_max);
    return {points.begin(), points.end()};
}

double bound_value(const BoundParams& p, std::uint64_t x)
{
    return p.C * std::sqrt(static_cast<double>(x)) * std::pow(std::log(static_cast<double>(x)), p.n);
}

} // namespace

void validate(const BoundParams& params)
{
    if (params.x0 <= 2)
        throw PreconditionError("x0 must exceed e (x0 >= 3)");
    if (!(params.C > 0) || !std::isfinite(params.C))
        throw PreconditionError("C must be positive");
    if (params.n < 1)
        throw PreconditionError("n must be >= 1");
}

MertensSamples MertensSamples::scan(std::uint64_t x_max, const MobiusSource& source, std::uint64_t segment)
{
    if (x_max == 0)
        throw PreconditionError("x_max must be >= 1");
    if (x_max >= (std::uint64_t{1} << 32))
        throw CapacityError("x_max^2 overflows 64 bits");
    require_capacity((x_max + 1) * 16, "Mertens samples");
    const std::uint64_t limit = x_max * x_max;
    MertensSamples out;
    out.m_.assign(x_max + 1, 0);
    out.m_sq_.assign(x_max + 1, 0);
    std::int64_t running = 0;
    std::uint64_t next_root = 1;
    for_each_segment(limit, segment, source, [&](std::uint64_t lo, std::span<const std::int8_t> mu) {
        for (std::size_t t = 0; t < mu.size(); ++t) {
            const std::uint64_t k = lo + t;
            running += mu[t];
            if (k <= x_max)
                out.m_[k] = running;
            if (next_root <= x_max && k == next_root * next_root) {
                out.m_sq_[next_root] = running;
                ++next_root;
            }
        }
    });
    return out;
}

MertensSamples MertensSamples::scan(std::uint64_t x_max)
{
    if (x_max >= (std::uint64_t{1} << 32))
        throw CapacityError("x_max^2 overflows 64 bits");
    return scan(x_max, sieve_source(x_max * x_max));
}

MertensSamples MertensSamples::from_cache(std::uint64_t x_max, const SequenceCache& cache)
{
    if (x_max == 0)
        throw PreconditionError("x_max must be >= 1");
    if (x_max >= (std::uint64_t{1} << 32) || x_max * x_max > cache.size())
        throw OutOfRange("cache does not cover x_max^2");
    MertensSamples out;
    out.m_.assign(x_max + 1, 0);
    out.m_sq_.assign(x_max + 1, 0);
    for (std::uint64_t y = 1; y <= x_max; ++y) {
        out.m_[y] = cache.mertens(y);
        out.m_sq_[y] = cache.mertens(y * y);
    }
    return out;
}

SupRecord sup_mertens(std::uint64_t x, const MertensSamples& samples)
{
    require_x(x);
    if (x > samples.x_max())
        throw OutOfRange("samples cover x <= " + std::to_string(samples.x_max()));
    SupRecord cur;
    cur.x = x;
    for (std::uint64_t y = kFirstY; y <= x; ++y) {
        if (std::uint64_t m = magnitude(samples.mertens(y)); y == kFirstY || m > cur.sup_M) {
            cur.sup_M = m;
            cur.argmax_y = y;
        }
        if (std::uint64_t m = magnitude(samples.mertens_square(y)); y == kFirstY || m > cur.sup_M_sq) {
            cur.sup_M_sq = m;
            cur.argmax_y_sq = y;
        }
    }
    return cur;
}

SupRecord sup_mertens(std::uint64_t x, const SequenceCache& cache)
{
    require_x(x);
    return sup_mertens(x, MertensSamples::from_cache(x, cache));
}

double minimal_constant_for(std::uint64_t sup_M, std::uint64_t x, unsigned n)
{
    require_x(x);
    const double scale = std::sqrt(static_cast<double>(x)) * std::pow(std::log(static_cast<double>(x)), n);
    return static_cast<double>(sup_M) / scale;
}

double minimal_constant(std::uint64_t x, unsigned n, const MertensSamples& samples)
{
    return minimal_constant_for(sup_mertens(x, samples).sup_M, x, n);
}

double minimal_constant(std::uint64_t x, unsigned n, const SequenceCache& cache)
{
    require_x(x);
    if (x > cache.size())
        throw OutOfRange("cache covers k <= " + std::to_string(cache.size()));
    std::uint64_t sup = 0;
    for (std::uint64_t y = kFirstY; y <= x; ++y)
        sup = std::max(sup, magnitude(cache.mertens(y)));
    return minimal_constant_for(sup, x, n);
}

InductionRow induction_row(const SupRecord& sup, unsigned n)
{
    require_x(sup.x);
    if (n < 1)
        throw PreconditionError("n must be >= 1");
    InductionRow row;
    row.x = sup.x;
    row.n = n;
    row.sup = sup;
    const double x = static_cast<double>(sup.x);
    row.lhs = sup.sup_M_sq;
    row.rhs = std::ldexp(1.0, static_cast<int>(n)) * std::sqrt(x) * static_cast<double>(sup.sup_M);
    if (row.rhs > 0)
        row.ratio = static_cast<double>(row.lhs) / row.rhs;
    else
        row.ratio = row.lhs == 0 ? 0.0 : HUGE_VAL;
    row.step_holds = static_cast<double>(row.lhs) <= row.rhs;
    row.minimal_C = minimal_constant_for(sup.sup_M, sup.x, n);

    const double c = row.minimal_C;
    const double stepped = c * std::ldexp(1.0, static_cast<int>(n)) * x * std::pow(std::log(x), n);
    const double squared = c * std::sqrt(x * x) * std::pow(std::log(x * x), n);
    row.chain_residual = stepped != 0 ? std::fabs(stepped - squared) / stepped : 0.0;
    return row;
}

InductionRow check_induction_step(std::uint64_t x, unsigned n, const MertensSamples& samples)
{
    return induction_row(sup_mertens(x, samples), n);
}

DoubleSumComparison double_sum_cross_check(std::uint64_t y, const SequenceCache& cache)
{
    if (y == 0)
        throw PreconditionError("y must be >= 1");
    if (y >= (std::uint64_t{1} << 32) || y * y > cache.size())
        throw OutOfRange("cache does not cover y^2");
    const std::uint64_t n = y * y;
    const auto coeffs = convolution_coeffs(y, ConvolutionKind::mobius, cache.mobius());

    DoubleSumComparison out;
    out.y = y;
    for (const auto& [p, c] : coeffs.coeffs)
        out.double_sum += static_cast<i128>(c) * (n / p);
    out.mertens_square = cache.mertens(n);
    out.offset = 2 * cache.mertens(y);

    Residual& r = out.residual;
    r.kind = ResidualKind::exact;
    r.lhs = out.double_sum;
    r.rhs = i128{out.offset - out.mertens_square};
    const i128 diff = out.double_sum - (out.offset - out.mertens_square);
    r.exact_value = diff;
    r.float_value = static_cast<double>(diff);

    if (y <= cache.rational_bound()) {
        ExactRational m1;
        for (std::uint64_t k = 1; k <= y; ++k)
            if (int m = cache.mu(k); m != 0)
                m1 += ExactRational(m, static_cast<std::int64_t>(k));
        mpz_class denom = 1;
        for (const auto& entry : coeffs.coeffs)
            mpz_lcm_ui(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(entry.first));
        mpz_class frac_num = 0;
        mpz_class share;
        for (const auto& [p, c] : coeffs.coeffs) {
            if (const std::uint64_t rem = n % p; rem != 0) {
                mpz_divexact_ui(share.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(p));
                frac_num += share * static_cast<long>(c) * static_cast<unsigned long>(rem);
            }
        }
        const ExactRational frac_form =
            ExactRational(static_cast<std::int64_t>(n)) * m1 * m1 - ExactRational(frac_num, denom);
        if (frac_form != ExactRational(out.double_sum)) {
            r.consistent = false;
            r.detail = "fractional-part form disagrees with the floor form";
        }
    }
    return out;
}

InductionReport induction_sweep(std::uint64_t x_max, unsigned n, const InductionOptions& options)
{
    require_x(x_max);
    if (x_max >= (std::uint64_t{1} << 32) || x_max * x_max > options.square_limit)
        throw CapacityError("induction sweep scans [1, x_max^2]; x_max^2 limited to " +
                            std::to_string(options.square_limit));
    const std::uint64_t limit = x_max * x_max;
    MobiusSource source = options.source ? options.source : sieve_source(limit);
    return induction_sweep(MertensSamples::scan(x_max, source, options.segment), n, options);
}

InductionReport induction_sweep(const MertensSamples& samples, unsigned n, const InductionOptions& options)
{
    const std::uint64_t x_max = samples.x_max();
    require_x(x_max);
    if (n < 1)
        throw PreconditionError("n must be >= 1");
    if (options.bound)
        validate(*options.bound);

    const auto records = running_records(samples);
    InductionReport report;
    report.x_max = x_max;
    report.n = n;

    InductionSummary& summary = report.summary;
    for (std::uint64_t x = kFirstY; x <= x_max; ++x) {
        const InductionRow row = induction_row(records[x], n);
        if (row.ratio > summary.max_ratio || summary.max_ratio_x == 0) {
            summary.max_ratio = row.ratio;
            summary.max_ratio_x = x;
        }
        if (row.minimal_C > summary.minimal_C || summary.minimal_C_x == 0) {
            summary.minimal_C = row.minimal_C;
            summary.minimal_C_x = x;
        }
        if (!row.step_holds) {
            ++summary.violation_count;
            if (summary.violations.size() < options.violation_list_limit)
                summary.violations.push_back(x);
        }
        summary.max_chain_residual = std::max(summary.max_chain_residual, row.chain_residual);
    }

    const auto points = row_points(x_max, options, records);
    report.rows.resize(points.size());
    parallel_for(points.size(), options.threads,
                 [&](std::size_t k) { report.rows[k] = induction_row(records[points[k]], n); });

    if (options.bound) {
        BoundCheck check;
        check.params = *options.bound;
        const BoundParams& p = check.params;
        for (std::uint64_t x = kFirstY; x < p.x0 && x <= x_max; ++x) {
            if (check.base_holds && static_cast<double>(records[x].sup_M) > bound_value(p, x)) {
                check.base_holds = false;
                check.first_base_violation = x;
            }
            if (check.steps_hold && !induction_row(records[x], p.n).step_holds) {
                check.steps_hold = false;
                check.first_step_violation = x;
            }
        }
        const std::uint64_t top = p.x0 < (std::uint64_t{1} << 32) ? std::min(p.x0 * p.x0 - 1, x_max) : x_max;
        for (std::uint64_t x = std::max(p.x0, kFirstY); x <= top; ++x) {
            check.extension_checked_to = x;
            if (static_cast<double>(records[x].sup_M) > bound_value(p, x)) {
                check.extension_holds = false;
                check.first_extension_violation = x;
                break;
            }
        }
        summary.bound = check;
    }
    return report;
}

MobiusSource synthetic_all_ones()
{
    return [](std::uint64_t, std::span<std::int8_t> out) { std::fill(out.begin(), out.end(), std::int8_t{1}); };
}

} // namespace mertens
