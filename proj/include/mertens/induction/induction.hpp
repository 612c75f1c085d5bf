#pragma once

#include "mertens/arith/mobius.hpp"
#include "mertens/identities/residual.hpp"
#include "mertens/int128.hpp"
#include "mertens/sequences/sequence_cache.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mertens {

/// Smallest integer above e; the lower end of every sup range.
inline constexpr std::uint64_t kFirstY = 3;
/// Default cap on x_max^2 for the streaming scan.
inline constexpr std::uint64_t kDefaultSquareLimit = 10'000'000'000ull;

/// Assumed bound sup |M_y| <= C sqrt(x) (log x)^n for 3 <= y <= x < x0.
struct BoundParams {
    std::uint64_t x0 = 3;
    double C = 1.0;
    unsigned n = 1;
};

/// Throws PreconditionError unless x0 > 2, C > 0 and n >= 1.
void validate(const BoundParams& params);

/// M_y and M_{y^2} for every y <= x_max.
class MertensSamples {
public:
    /// Streams mu over [1, x_max^2] in segments, keeping a running M.
    static MertensSamples scan(std::uint64_t x_max, const MobiusSource& source, std::uint64_t segment = 0);
    /// Streams the true Möbius function.
    static MertensSamples scan(std::uint64_t x_max);
    /// Reads from a cache whose table covers x_max^2.
    static MertensSamples from_cache(std::uint64_t x_max, const SequenceCache& cache);

    std::uint64_t x_max() const { return m_.size() - 1; }
    std::int64_t mertens(std::uint64_t y) const { return m_.at(y); }
    std::int64_t mertens_square(std::uint64_t y) const { return m_sq_.at(y); }

private:
    std::vector<std::int64_t> m_;
    std::vector<std::int64_t> m_sq_;
};

/// Running maxima over integer y in [3, x]; ties go to the smallest y.
struct SupRecord {
    std::uint64_t x = 0;
    std::uint64_t sup_M = 0;
    std::uint64_t argmax_y = 0;
    std::uint64_t sup_M_sq = 0;
    std::uint64_t argmax_y_sq = 0;
};

SupRecord sup_mertens(std::uint64_t x, const MertensSamples& samples);
/// The cache must cover x^2.
SupRecord sup_mertens(std::uint64_t x, const SequenceCache& cache);

/// sup_M / (sqrt(x) (log x)^n): the least C for which the bound holds at x.
double minimal_constant(std::uint64_t x, unsigned n, const MertensSamples& samples);
/// Same, reading M_y for y <= x from a cache that covers x (no squares needed).
double minimal_constant(std::uint64_t x, unsigned n, const SequenceCache& cache);
double minimal_constant_for(std::uint64_t sup_M, std::uint64_t x, unsigned n);

/// One row of the step check sup |M_{y^2}| <= 2^n sqrt(x) sup |M_y|.
struct InductionRow {
    std::uint64_t x = 0;
    unsigned n = 1;
    SupRecord sup;
    std::uint64_t lhs = 0; // sup_M_sq
    double rhs = 0.0;      // 2^n sqrt(x) sup_M
    double ratio = 0.0;    // lhs / rhs
    double minimal_C = 0.0;
    bool step_holds = false;
    /// Relative gap between C 2^n x (log x)^n and C sqrt(x^2) (log x^2)^n at
    /// C = minimal_C; the squaring step relies on these being equal.
    double chain_residual = 0.0;
};

InductionRow induction_row(const SupRecord& sup, unsigned n);
InductionRow check_induction_step(std::uint64_t x, unsigned n, const MertensSamples& samples);

/// Exact bookkeeping between M_{y^2} and the double sum S = sum mu_i mu_j floor(y^2/(ij)).
struct DoubleSumComparison {
    std::uint64_t y = 0;
    i128 double_sum = 0;
    std::int64_t mertens_square = 0;
    /// S - (-M_{y^2}) = 2 M_y.
    std::int64_t offset = 0;
    /// S - (2 M_y - M_{y^2}); marked inconsistent if the fractional-part form
    /// y^2 m_y^2 - sum mu_i mu_j frac(y^2/(ij)) disagrees (checked exactly for
    /// y within the cache's rational bound).
    Residual residual;
};

/// The cache must cover y^2.
DoubleSumComparison double_sum_cross_check(std::uint64_t y, const SequenceCache& cache);

/// Outcome of running the procedure with explicit (x0, C, n).
struct BoundCheck {
    BoundParams params;
    /// sup |M_y| <= C sqrt(x) (log x)^n for every x in [3, x0).
    bool base_holds = true;
    std::optional<std::uint64_t> first_base_violation;
    /// The step inequality at every x in [3, x0).
    bool steps_hold = true;
    std::optional<std::uint64_t> first_step_violation;
    /// The bound at every x in [x0, min(x0^2 - 1, x_max)].
    bool extension_holds = true;
    std::optional<std::uint64_t> first_extension_violation;
    std::uint64_t extension_checked_to = 0;
};

struct InductionOptions {
    /// Every x in [3, dense_limit] gets a row.
    std::uint64_t dense_limit = 1000;
    /// Log-spaced rows per decade above the dense range.
    unsigned points_per_decade = 10;
    unsigned threads = 1;
    std::optional<BoundParams> bound;
    /// Replaces the sieve when set (used to inject synthetic sequences).
    MobiusSource source;
    std::uint64_t segment = 0;
    std::uint64_t square_limit = kDefaultSquareLimit;
    /// Largest number of violating x listed individually.
    std::size_t violation_list_limit = 1000;
};

struct InductionSummary {
    double max_ratio = 0.0;
    std::uint64_t max_ratio_x = 0;
    /// Largest minimal_C over every x in [3, x_max].
    double minimal_C = 0.0;
    std::uint64_t minimal_C_x = 0;
    /// x in [3, x_max] where the step inequality fails (first entries only).
    std::vector<std::uint64_t> violations;
    std::uint64_t violation_count = 0;
    double max_chain_residual = 0.0;
    std::optional<BoundCheck> bound;
};

struct InductionReport {
    std::uint64_t x_max = 0;
    unsigned n = 1;
    std::vector<InductionRow> rows; // ascending x
    InductionSummary summary;

    bool all_steps_hold() const { return summary.violation_count == 0; }
};

InductionReport induction_sweep(std::uint64_t x_max, unsigned n, const InductionOptions& options = {});
/// Same sweep over precomputed samples.
InductionReport induction_sweep(const MertensSamples& samples, unsigned n, const InductionOptions& options = {});

/// mu(k) = +1 for every k. M_y = y, so the step fails for x >= 5.
MobiusSource synthetic_all_ones();

} // namespace mertens
