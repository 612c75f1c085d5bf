#include "mertens/errors.hpp"
#include "mertens/induction/induction.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mertens;

namespace {

std::uint64_t mag(std::int64_t v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); }

} // namespace

TEST(Sup, Examples)
{
    const auto samples = MertensSamples::scan(10);
    const auto m = oracle::mertens_table(100);
    for (std::uint64_t y = 1; y <= 10; ++y) {
        ASSERT_EQ(samples.mertens(y), m[y]);
        ASSERT_EQ(samples.mertens_square(y), m[y * y]);
    }

    const SupRecord three = sup_mertens(3, samples);
    EXPECT_EQ(three.sup_M, 1u);
    EXPECT_EQ(three.argmax_y, 3u);

    // M_3..M_10 = -1 -1 -2 -1 -2 -2 -2 -1; the first -2 is at y = 5.
    const SupRecord ten = sup_mertens(10, samples);
    EXPECT_EQ(ten.sup_M, 2u);
    EXPECT_EQ(ten.argmax_y, 5u);

    EXPECT_THROW(sup_mertens(2, samples), PreconditionError);
    EXPECT_THROW(sup_mertens(11, samples), OutOfRange);
}

TEST(Sup, MonotoneAndTieBreak)
{
    const std::uint64_t x_max = 2000;
    const auto samples = MertensSamples::scan(x_max);
    const auto m = oracle::mertens_table(x_max * x_max);
    SupRecord prev = sup_mertens(3, samples);
    for (std::uint64_t x = 4; x <= x_max; x += 7) {
        const SupRecord cur = sup_mertens(x, samples);
        ASSERT_GE(cur.sup_M, prev.sup_M);
        ASSERT_GE(cur.sup_M_sq, prev.sup_M_sq);
        ASSERT_LE(cur.sup_M, x);
        ASSERT_EQ(cur.sup_M, mag(m[cur.argmax_y]));
        ASSERT_EQ(cur.sup_M_sq, mag(m[cur.argmax_y_sq * cur.argmax_y_sq]));
        for (std::uint64_t y = 3; y < cur.argmax_y; ++y)
            ASSERT_LT(mag(m[y]), cur.sup_M);
        for (std::uint64_t y = 3; y < cur.argmax_y_sq; ++y)
            ASSERT_LT(mag(m[y * y]), cur.sup_M_sq);
        prev = cur;
    }
}

TEST(Sup, CacheAndScanAgree)
{
    SequenceOptions o;
    o.table_size = 300 * 300;
    const SequenceCache cache(o);
    const auto samples = MertensSamples::scan(300);
    for (std::uint64_t x : {3ull, 17ull, 150ull, 300ull}) {
        const SupRecord a = sup_mertens(x, cache);
        const SupRecord b = sup_mertens(x, samples);
        EXPECT_EQ(a.sup_M, b.sup_M);
        EXPECT_EQ(a.argmax_y, b.argmax_y);
        EXPECT_EQ(a.sup_M_sq, b.sup_M_sq);
        EXPECT_EQ(a.argmax_y_sq, b.argmax_y_sq);
    }
}

TEST(MinimalConstant, Examples)
{
    const auto samples = MertensSamples::scan(50);
    EXPECT_NEAR(minimal_constant(3, 1, samples), 1.0 / (std::sqrt(3.0) * std::log(3.0)), 1e-15);
    EXPECT_NEAR(minimal_constant(3, 1, samples), 0.5255, 1e-4);
    double prev = minimal_constant(50, 1, samples);
    for (unsigned n = 2; n <= 40; ++n) {
        const double c = minimal_constant(50, n, samples);
        ASSERT_LT(c, prev);
        prev = c;
    }
    EXPECT_LT(prev, 1e-10);

    for (std::uint64_t x = 3; x <= 50; ++x) {
        const SupRecord s = sup_mertens(x, samples);
        const double c = minimal_constant(x, 1, samples);
        const double bound = c * std::sqrt(static_cast<double>(x)) * std::log(static_cast<double>(x));
        ASSERT_NEAR(bound, static_cast<double>(s.sup_M), 1e-12 * static_cast<double>(s.sup_M));
    }
}

TEST(MinimalConstant, MillionAgainstFullScan)
{
    const std::uint64_t x = 1000000;
    SequenceOptions o;
    o.table_size = x;
    const SequenceCache cache(o);
    const auto m = oracle::mertens_table(x);
    std::uint64_t sup = 0;
    for (std::uint64_t y = 3; y <= x; ++y)
        sup = std::max(sup, mag(m[y]));
    EXPECT_EQ(sup, 368u);
    const double c = minimal_constant(x, 1, cache);
    EXPECT_EQ(c, minimal_constant_for(sup, x, 1));
    EXPECT_NEAR(c, 0.026636728223399447, 1e-15);
}

TEST(Step, Examples)
{
    const auto samples = MertensSamples::scan(3);
    const InductionRow row = check_induction_step(3, 1, samples);
    EXPECT_EQ(samples.mertens_square(3), -2);
    EXPECT_EQ(row.lhs, 2u);
    EXPECT_DOUBLE_EQ(row.rhs, 2 * std::sqrt(3.0));
    EXPECT_TRUE(row.step_holds);
    EXPECT_NEAR(row.ratio, 2 / (2 * std::sqrt(3.0)), 1e-15);
    EXPECT_LE(row.chain_residual, 1e-15);
}

TEST(Step, ChainingArithmetic)
{
    const auto samples = MertensSamples::scan(1000);
    for (unsigned n = 1; n <= 4; ++n)
        for (std::uint64_t x = 3; x <= 1000; x += 13)
            ASSERT_LE(check_induction_step(x, n, samples).chain_residual, 1e-14);
}

TEST(DoubleSum, CrossCheck)
{
    SequenceOptions o;
    o.table_size = 200 * 200;
    const SequenceCache cache(o);
    const auto mu = oracle::mu_table(200 * 200);
    const auto m = oracle::mertens_table(200 * 200);

    const auto one = double_sum_cross_check(1, cache);
    EXPECT_EQ(one.double_sum, 1);
    EXPECT_TRUE(one.residual.is_zero());

    for (std::uint64_t y = 1; y <= 200; ++y) {
        const auto c = double_sum_cross_check(y, cache);
        std::int64_t naive = 0;
        for (std::uint64_t i = 1; i <= y; ++i)
            for (std::uint64_t j = 1; j <= y; ++j)
                naive += mu[i] * mu[j] * static_cast<std::int64_t>(y * y / (i * j));
        ASSERT_EQ(c.double_sum, naive) << y;
        ASSERT_EQ(c.mertens_square, m[y * y]);
        ASSERT_EQ(c.offset, 2 * m[y]);
        ASSERT_EQ(c.double_sum + c.mertens_square, c.offset);
        ASSERT_TRUE(c.residual.is_zero());
        ASSERT_TRUE(c.residual.consistent) << y << " " << c.residual.detail;
    }
    EXPECT_THROW(double_sum_cross_check(201, cache), OutOfRange);
}

TEST(Sweep, TenRows)
{
    const InductionReport r = induction_sweep(10, 1);
    ASSERT_EQ(r.rows.size(), 8u);
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const InductionRow& row = r.rows[k];
        EXPECT_EQ(row.x, 3 + k);
        EXPECT_EQ(row.n, 1u);
        EXPECT_EQ(row.sup.x, row.x);
        EXPECT_GT(row.rhs, 0.0);
        EXPECT_TRUE(std::isfinite(row.ratio));
        EXPECT_GT(row.minimal_C, 0.0);
        EXPECT_EQ(row.step_holds, static_cast<double>(row.lhs) <= row.rhs);
    }
    EXPECT_TRUE(r.all_steps_hold());
    EXPECT_TRUE(r.summary.violations.empty());
}

TEST(Sweep, RowsMatchRawSieveData)
{
    const std::uint64_t x_max = 3000;
    InductionOptions opts;
    opts.dense_limit = 500;
    opts.threads = 3;
    const InductionReport r = induction_sweep(x_max, 1, opts);
    const auto m = oracle::mertens_table(x_max * x_max);
    EXPECT_EQ(r.rows.front().x, 3u);
    EXPECT_EQ(r.rows.back().x, x_max);
    std::uint64_t prev_x = 0;
    for (const auto& row : r.rows) {
        ASSERT_GT(row.x, prev_x);
        prev_x = row.x;
        std::uint64_t sup = 0, sup_sq = 0;
        for (std::uint64_t y = 3; y <= row.x; ++y) {
            sup = std::max(sup, mag(m[y]));
            sup_sq = std::max(sup_sq, mag(m[y * y]));
        }
        ASSERT_EQ(row.sup.sup_M, sup);
        ASSERT_EQ(row.lhs, sup_sq);
        ASSERT_EQ(row.rhs, 2.0 * std::sqrt(static_cast<double>(row.x)) * static_cast<double>(sup));
    }
    // Every record point of sup_M above the dense range appears as a row.
    std::uint64_t running = 0;
    std::size_t k = 0;
    for (std::uint64_t x = 3; x <= x_max; ++x) {
        const std::uint64_t next = std::max(running, mag(m[x]));
        if (x > 500 && next > running) {
            while (k < r.rows.size() && r.rows[k].x < x)
                ++k;
            ASSERT_LT(k, r.rows.size());
            ASSERT_EQ(r.rows[k].x, x);
        }
        running = next;
    }
}

TEST(Sweep, ThreadCountDoesNotChangeRows)
{
    InductionOptions one, many;
    one.dense_limit = many.dense_limit = 100;
    many.threads = 4;
    const auto a = induction_sweep(2000, 2, one);
    const auto b = induction_sweep(2000, 2, many);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        EXPECT_EQ(a.rows[k].x, b.rows[k].x);
        EXPECT_EQ(a.rows[k].ratio, b.rows[k].ratio);
    }
    EXPECT_EQ(a.summary.max_ratio, b.summary.max_ratio);
}

TEST(Sweep, SyntheticViolationIsReported)
{
    InductionOptions opts;
    opts.source = synthetic_all_ones();
    const InductionReport r = induction_sweep(20, 1, opts);
    EXPECT_FALSE(r.all_steps_hold());
    EXPECT_EQ(r.summary.violation_count, 16u);
    ASSERT_FALSE(r.summary.violations.empty());
    EXPECT_EQ(r.summary.violations.front(), 5u);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.sup.sup_M, row.x);
        EXPECT_EQ(row.lhs, row.x * row.x);
        EXPECT_EQ(row.step_holds, row.x <= 4);
    }
}

TEST(Sweep, BoundParameters)
{
    InductionOptions loose;
    loose.bound = BoundParams{.x0 = 30, .C = 1.0, .n = 1};
    const auto ok = induction_sweep(100, 1, loose);
    ASSERT_TRUE(ok.summary.bound.has_value());
    EXPECT_TRUE(ok.summary.bound->base_holds);
    EXPECT_TRUE(ok.summary.bound->steps_hold);
    EXPECT_TRUE(ok.summary.bound->extension_holds);
    EXPECT_EQ(ok.summary.bound->extension_checked_to, 100u);

    InductionOptions tight;
    tight.bound = BoundParams{.x0 = 30, .C = 0.01, .n = 1};
    const auto bad = induction_sweep(100, 1, tight);
    EXPECT_FALSE(bad.summary.bound->base_holds);
    EXPECT_EQ(bad.summary.bound->first_base_violation, 3u);
    EXPECT_FALSE(bad.summary.bound->extension_holds);

    EXPECT_THROW(validate(BoundParams{.x0 = 2, .C = 1, .n = 1}), PreconditionError);
    EXPECT_THROW(validate(BoundParams{.x0 = 5, .C = 0, .n = 1}), PreconditionError);
    EXPECT_THROW(validate(BoundParams{.x0 = 5, .C = 1, .n = 0}), PreconditionError);
}

TEST(Sweep, Limits)
{
    EXPECT_THROW(induction_sweep(2, 1), PreconditionError);
    EXPECT_THROW(induction_sweep(10, 0), PreconditionError);
    InductionOptions opts;
    opts.square_limit = 1000;
    EXPECT_THROW(induction_sweep(100, 1, opts), CapacityError);
}
