#pragma once

#include "mertens/arith/exact_rational.hpp"
#include "mertens/arith/mobius.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string_view>
#include <vector>

namespace mertens {

enum class Mode { exact, floating };

std::string_view to_string(Mode mode);
/// Accepts "exact" or "float"; throws PreconditionError otherwise.
Mode parse_mode(std::string_view text);

/// 1 / k^s with the conventions every float path shares: s = 0 gives 1 and
/// s = 1 gives a single correctly rounded division.
double inverse_power(std::uint64_t k, double s);

/// Default bound on x for exact rational evaluation at s = 1.
inline constexpr std::uint64_t kDefaultRationalBound = 200;
/// Default largest argument held in the exact s = 1 prefix tables.
inline constexpr std::uint64_t kDefaultExactTableCap = 10000;

/// Exact prefix tables at s = 1 over the common denominator L = lcm(1..n):
/// H_k = harmonic_numerator(k) / L and m_k = oscillatory_numerator(k) / L.
/// Keeping one denominator turns sums of these values into integer sums.
class ExactPrefix {
public:
    ExactPrefix(const MobiusTable& mobius, std::uint64_t n);

    std::uint64_t size() const { return n_; }
    const mpz_class& common_denominator() const { return lcm_; }
    /// L / k for 1 <= k <= n.
    const mpz_class& reciprocal(std::uint64_t k) const;
    /// L * H_k for 0 <= k <= n.
    const mpz_class& harmonic_numerator(std::uint64_t k) const;
    /// L * m_k for 0 <= k <= n.
    const mpz_class& oscillatory_numerator(std::uint64_t k) const;

    ExactRational harmonic(std::uint64_t k) const;
    ExactRational oscillatory(std::uint64_t k) const;

private:
    void check(std::uint64_t k) const;

    std::uint64_t n_;
    mpz_class lcm_;
    std::vector<mpz_class> reciprocal_;
    std::vector<mpz_class> harmonic_;
    std::vector<mpz_class> oscillatory_;
};

struct SequenceOptions {
    /// Largest k covered by the mu and Mertens tables.
    std::uint64_t table_size = 1;
    /// Exponents s for which float prefix tables of M_k(s) and H_k(s) are built.
    std::vector<double> float_exponents;
    /// Largest k of the exact s = 1 tables; 0 disables them.
    std::uint64_t exact_size = 0;
    /// Largest x accepted by exact s = 1 evaluation requests.
    std::uint64_t rational_bound = kDefaultRationalBound;
};

/// Prefix tables for M_k, m_k = M_k(1), M_k(s) and H_k(s). Built once, then
/// read-only and safe to share between threads.
class SequenceCache {
public:
    explicit SequenceCache(const SequenceOptions& options);

    std::uint64_t size() const { return n_; }
    std::uint64_t rational_bound() const { return rational_bound_; }
    const MobiusTable& mobius() const { return *mobius_; }

    /// mu(k) for 1 <= k <= size().
    int mu(std::uint64_t k) const;
    /// M_k; k = 0 gives 0. Values above size() are served from the
    /// large-value memo when present. Throws OutOfRange otherwise.
    std::int64_t mertens(std::uint64_t k) const;

    bool has_float(double s) const { return float_.count(s) != 0; }
    /// Float M_k(s); k = 0 gives 0. Requires a table for s.
    double oscillatory(std::uint64_t k, double s) const;
    /// Float H_k(s); k = 0 gives 0.
    double harmonic(std::uint64_t k, double s) const;

    /// Exact s = 1 tables, or nullptr when not built.
    const ExactPrefix* exact() const { return exact_.get(); }
    std::uint64_t exact_size() const { return exact_ ? exact_->size() : 0; }

    /// Evaluates M_v for each v above the table with the sublinear method and
    /// memoizes it. Single-writer: call before sharing the cache.
    void memoize_large(const std::vector<std::uint64_t>& values);

private:
    struct FloatTables {
        std::vector<double> oscillatory;
        std::vector<double> harmonic;
    };

    const FloatTables& tables(double s) const;

    std::uint64_t n_;
    std::uint64_t rational_bound_;
    std::shared_ptr<const MobiusTable> mobius_;
    std::vector<std::int32_t> mertens_;
    std::map<double, FloatTables> float_;
    std::unique_ptr<const ExactPrefix> exact_;
    std::map<std::uint64_t, std::int64_t> large_;
};

} // namespace mertens
