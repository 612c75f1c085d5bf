#include "mertens/gamma/gamma.hpp"

#include "mertens/arith/exact_sum.hpp"
#include "mertens/errors.hpp"
#include "mertens/identities/convolution.hpp"
#include "mertens/parallel.hpp"
#include "mertens/sequences/evaluators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mertens {

namespace {

void require_gamma_x(std::uint64_t x, std::uint64_t cap)
{
    if (x < 2)
        throw PreconditionError("gamma_series requires x >= 2");
    if (x > cap)
        throw CapacityError("gamma_series limited to x <= " + std::to_string(cap));
}

} // namespace

GammaTables::GammaTables(std::uint64_t x_max, std::uint64_t cap) : x_max_(x_max)
{
    require_gamma_x(x_max, cap);
    SequenceOptions opts;
    opts.table_size = x_max * x_max;
    opts.float_exponents = {1.0};
    cache_ = std::make_unique<SequenceCache>(opts);
}

GammaEstimate gamma_series(std::uint64_t x, const GammaTables& tables)
{
    if (x < 2)
        throw PreconditionError("gamma_series requires x >= 2");
    if (x > tables.x_max())
        throw OutOfRange("gamma tables built for x <= " + std::to_string(tables.x_max()));
    const SequenceCache& cache = tables.cache();
    const std::uint64_t n = x * x;
    const auto coeffs = convolution_coeffs(x, ConvolutionKind::plain, cache.mobius());
    ExactSum sum;
    for (const auto& [p, c] : coeffs.coeffs)
        sum.add(inverse_power(p, 1.0) * cache.oscillatory(n / p, 1.0), c);

    GammaEstimate out;
    out.x = x;
    out.estimate = sum.value();
    out.reference_gamma = kEulerGamma;
    out.abs_error = std::fabs(out.estimate - out.reference_gamma);
    out.scaled_error = out.abs_error * static_cast<double>(x);
    return out;
}

GammaEstimate gamma_series(std::uint64_t x)
{
    GammaTables tables(x);
    return gamma_series(x, tables);
}

GammaStudy gamma_convergence_study(std::span<const std::uint64_t> x_values, unsigned threads, std::uint64_t cap)
{
    if (x_values.empty())
        throw PreconditionError("convergence study needs at least one x");
    for (std::size_t k = 0; k < x_values.size(); ++k) {
        require_gamma_x(x_values[k], cap);
        if (k > 0 && x_values[k] <= x_values[k - 1])
            throw PreconditionError("convergence study x values must be strictly ascending");
    }
    GammaTables tables(x_values.back(), cap);

    GammaStudy study;
    study.rows.resize(x_values.size());
    parallel_for(x_values.size(), threads, [&](std::size_t k) { study.rows[k] = gamma_series(x_values[k], tables); });

    for (const auto& row : study.rows)
        study.max_scaled_error = std::max(study.max_scaled_error, row.scaled_error);
    if (study.rows.size() >= 2) {
        study.trend_computed = true;
        study.monotone_growth = true;
        for (std::size_t k = 1; k < study.rows.size(); ++k) {
            const double prev = study.rows[k - 1].scaled_error;
            const double cur = study.rows[k].scaled_error;
            study.monotone_growth = study.monotone_growth && cur > prev;
            if (prev > 0)
                study.max_growth_ratio = std::max(study.max_growth_ratio, cur / prev);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const auto count = static_cast<double>(study.rows.size());
        for (const auto& row : study.rows) {
            const double lx = std::log(static_cast<double>(row.x));
            const double ly = std::log(row.abs_error);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double denom = count * sxx - sx * sx;
        study.log_log_slope = denom != 0 ? (count * sxy - sx * sy) / denom : 0.0;
    }
    return study;
}

} // namespace mertens
