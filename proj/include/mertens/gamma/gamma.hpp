#pragma once

#include "mertens/sequences/sequence_cache.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mertens {

/// Largest x accepted by the gamma series: its m-table reaches x^2 = 9e6 entries.
inline constexpr std::uint64_t kGammaCap = 3000;

/// One evaluation of sum_{i,j<=x} m_{x^2/(i j)} / (i j), which tends to
/// Euler's constant with an O(1/x) remainder.
struct GammaEstimate {
    std::uint64_t x = 0;
    double estimate = 0.0;
    double reference_gamma = 0.0;
    double abs_error = 0.0;
    /// abs_error * x; roughly constant if the remainder is O(1/x).
    double scaled_error = 0.0;
};

/// Float prefix table of m_k = sum_{i<=k} mu(i) / i for k <= x_max^2.
class GammaTables {
public:
    explicit GammaTables(std::uint64_t x_max, std::uint64_t cap = kGammaCap);

    std::uint64_t x_max() const { return x_max_; }
    const SequenceCache& cache() const { return *cache_; }

private:
    std::uint64_t x_max_;
    std::unique_ptr<SequenceCache> cache_;
};

/// Evaluates the series by collapsing the double sum onto p = i * j with
/// plain convolution coefficients. Each term is (1.0 / p) * m_{x^2/p} and the
/// terms are summed exactly and rounded once, so the result equals the naive
/// double loop over (i, j) bit for bit.
GammaEstimate gamma_series(std::uint64_t x, const GammaTables& tables);
GammaEstimate gamma_series(std::uint64_t x);

struct GammaStudy {
    std::vector<GammaEstimate> rows;
    /// Largest scaled_error over the rows (the empirical O(1/x) constant).
    double max_scaled_error = 0.0;
    /// Whether a trend was computed (needs at least two rows).
    bool trend_computed = false;
    /// scaled_error strictly increases from each row to the next.
    bool monotone_growth = false;
    /// Largest ratio scaled_error[k+1] / scaled_error[k].
    double max_growth_ratio = 0.0;
    /// Least-squares slope of log(abs_error) against log(x); -1 for an exact 1/x law.
    double log_log_slope = 0.0;
};

/// One estimate per x (ascending, each within the cap). Rows for distinct x
/// are computed on up to `threads` workers; output order never depends on it.
GammaStudy gamma_convergence_study(std::span<const std::uint64_t> x_values, unsigned threads = 1,
                                   std::uint64_t cap = kGammaCap);

} // namespace mertens
