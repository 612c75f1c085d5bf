#include "mertens/errors.hpp"
#include "mertens/gamma/gamma.hpp"
#include "mertens/sequences/evaluators.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mertens;

namespace {

// Float m_k table built by plain ascending summation in the test, then each
// term (1.0 / (i j)) * m_{x^2/(i j)} of the naive double loop is accumulated
// exactly in GMP and rounded once.
double naive_series(std::uint64_t x, const std::vector<double>& m)
{
    mpq_class total = 0;
    for (std::uint64_t i = 1; i <= x; ++i)
        for (std::uint64_t j = 1; j <= x; ++j) {
            const std::uint64_t p = i * j;
            total += oracle::exact((1.0 / static_cast<double>(p)) * m[x * x / p]);
        }
    return oracle::round_to_double(total);
}

} // namespace

TEST(GammaSeries, TwoByTwo)
{
    const GammaEstimate g = gamma_series(2);
    // m_4 + m_2 + m_1 / 4 with m_1 = 1, m_2 = 1/2, m_4 = 1/6.
    EXPECT_NEAR(g.estimate, 11.0 / 12.0, 1e-15);
    EXPECT_NEAR(g.estimate, 0.9167, 1e-4);
    EXPECT_EQ(g.reference_gamma, kEulerGamma);
    EXPECT_EQ(g.abs_error, std::fabs(g.estimate - kEulerGamma));
    EXPECT_EQ(g.scaled_error, g.abs_error * 2);
}

TEST(GammaSeries, EqualsNaiveDoubleLoopBitForBit)
{
    const GammaTables tables(100);
    const auto& cache = tables.cache();
    std::vector<double> m(100 * 100 + 1, 0.0);
    for (std::uint64_t k = 1; k < m.size(); ++k)
        m[k] = cache.oscillatory(k, 1.0);
    for (std::uint64_t x = 2; x <= 100; ++x)
        ASSERT_EQ(gamma_series(x, tables).estimate, naive_series(x, m)) << x;
}

TEST(GammaSeries, FrozenValues)
{
    // 2 H_x - H_{x^2}, evaluated in 40-digit arithmetic.
    EXPECT_NEAR(gamma_series(50).estimate, 0.59694901423435825728, 1e-13);
    EXPECT_NEAR(gamma_series(100).estimate, 0.58714899923485825743, 1e-13);
    EXPECT_NEAR(gamma_series(1000).estimate, 0.57821499823496619393, 1e-13);
}

TEST(GammaSeries, HarmonicConsistency)
{
    const GammaTables tables(200);
    const auto& cache = tables.cache();
    for (std::uint64_t x = 2; x <= 200; ++x) {
        const double est = gamma_series(x, tables).estimate;
        const double gap = est + cache.harmonic(x * x, 1.0) - 2 * cache.harmonic(x, 1.0);
        ASSERT_LE(std::fabs(gap), 1e-12) << x;
    }
}

TEST(GammaSeries, Errors)
{
    EXPECT_THROW(gamma_series(1), PreconditionError);
    EXPECT_THROW(gamma_series(3001), CapacityError);
    const GammaTables small(10);
    EXPECT_THROW(gamma_series(11, small), OutOfRange);
}

TEST(GammaStudy, SingleRowHasNoTrend)
{
    const std::vector<std::uint64_t> xs{2};
    const GammaStudy s = gamma_convergence_study(xs);
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_FALSE(s.trend_computed);
    EXPECT_EQ(s.max_scaled_error, s.rows[0].scaled_error);
}

TEST(GammaStudy, Doublings)
{
    const std::vector<std::uint64_t> xs{50, 100, 200, 400};
    const GammaStudy s = gamma_convergence_study(xs);
    ASSERT_EQ(s.rows.size(), 4u);
    EXPECT_TRUE(s.trend_computed);
    EXPECT_LT(s.rows[3].abs_error, s.rows[0].abs_error);
    double k = 0;
    for (const auto& r : s.rows) {
        EXPECT_GT(r.abs_error, 0.0);
        EXPECT_TRUE(std::isfinite(r.estimate));
        EXPECT_LE(r.scaled_error, s.max_scaled_error);
        EXPECT_EQ(r.scaled_error, r.abs_error * static_cast<double>(r.x));
        k = std::max(k, r.scaled_error);
    }
    EXPECT_EQ(k, s.max_scaled_error);
    EXPECT_NEAR(s.log_log_slope, -1.0, 0.01);
    EXPECT_LT(s.max_growth_ratio, 1.01);
}

TEST(GammaStudy, ThreadCountDoesNotChangeRows)
{
    const std::vector<std::uint64_t> xs{10, 20, 40, 80, 160};
    const GammaStudy a = gamma_convergence_study(xs, 1);
    const GammaStudy b = gamma_convergence_study(xs, 4);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k)
        EXPECT_EQ(a.rows[k].estimate, b.rows[k].estimate);
}

TEST(GammaStudy, RejectsBadInput)
{
    const std::vector<std::uint64_t> down{100, 50};
    EXPECT_THROW(gamma_convergence_study(down), PreconditionError);
    const std::vector<std::uint64_t> none;
    EXPECT_THROW(gamma_convergence_study(none), PreconditionError);
    const std::vector<std::uint64_t> big{5000};
    EXPECT_THROW(gamma_convergence_study(big), CapacityError);
}
