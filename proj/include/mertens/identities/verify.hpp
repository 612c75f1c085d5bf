#pragma once

#include "mertens/identities/residual.hpp"
#include "mertens/sequences/sequence_cache.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace mertens {

enum class IdentityId { eq1, eq2, eq3, eq5, eq6, eq7, eq11, eq12, eq13, eq15, eq16, eq17, eq18 };

std::string_view to_string(IdentityId id);
/// Accepts "eq1" ... "eq18" (case-insensitive); throws PreconditionError.
IdentityId parse_identity(std::string_view text);
std::span<const IdentityId> all_identities();

/// True for identities whose sequence arguments reach x^2.
bool reaches_square(IdentityId id);

struct IdentityCase {
    IdentityId id = IdentityId::eq1;
    std::uint64_t x = 1;
    std::optional<std::uint64_t> j; // eq2 and eq12 only
    double s = 0.0;
    Mode mode = Mode::exact;
};

/// Throws PreconditionError on a malformed case: x = 0, j present or absent
/// wrongly, j outside [x, x^2], or exact mode with s outside {0, 1}.
void validate(const IdentityCase& c);

/// Pins the parameters the specialised identities fix: eq6 and eq17 are
/// exact at s = 0, eq7 and eq16 run at s = 1, eq18 is the s = 0 identity.
IdentityCase normalized(IdentityCase c);

struct VerifyOptions {
    /// Float residual tolerance; also bounds float-mode cross-checks.
    double tolerance = 1e-9;
    /// Largest x for the O(x^3) derivation-chain checks (eq3, eq13).
    std::uint64_t triple_exact_bound = 12;
    std::uint64_t triple_float_bound = 60;
};

/// Sum_{i<=x} M_{x/i}(s) / i^s = 1.
Residual verify_eq1(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                    const VerifyOptions& opts = {});
/// Sum_{i<=x} M_{x^2/(j i)}(s) / i^s = 1 for x <= j <= x^2.
Residual verify_eq2(std::uint64_t x, std::uint64_t j, double s, Mode mode, const SequenceCache& cache,
                    const VerifyOptions& opts = {});
/// The triple sum over j in (x, x^2], i <= x equals H_{x^2}(s) - H_x(s);
/// also recomputes it with i outermost and through the two rearranged forms.
Residual verify_eq3(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                    const VerifyOptions& opts = {});
/// H_{x^2}(s) = 2 H_x(s) - sum_{i,j<=x} M_{x^2/(i j)}(s) / (i j)^s.
Residual verify_eq5(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                    const VerifyOptions& opts = {});
/// eq5 at s = 0, always exact.
Residual verify_eq6(std::uint64_t x, const SequenceCache& cache);
/// eq5 at s = 1.
Residual verify_eq7(std::uint64_t x, Mode mode, const SequenceCache& cache, const VerifyOptions& opts = {});
/// Sum_{i<=x} mu(i) H_{x/i}(s) / i^s = 1.
Residual verify_eq11(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                     const VerifyOptions& opts = {});
/// Sum_{i<=x} mu(i) H_{x^2/(j i)}(s) / i^s = 1 for x <= j <= x^2.
Residual verify_eq12(std::uint64_t x, std::uint64_t j, double s, Mode mode, const SequenceCache& cache,
                     const VerifyOptions& opts = {});
/// Dual of eq3: right-hand side M_{x^2}(s) - M_x(s).
Residual verify_eq13(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                     const VerifyOptions& opts = {});
/// M_{x^2}(s) = 2 M_x(s) - sum_{i,j<=x} mu(i) mu(j) H_{x^2/(i j)}(s) / (i j)^s.
Residual verify_eq15(std::uint64_t x, double s, Mode mode, const SequenceCache& cache,
                     const VerifyOptions& opts = {});
/// eq15 at s = 1.
Residual verify_eq16(std::uint64_t x, Mode mode, const SequenceCache& cache, const VerifyOptions& opts = {});
/// eq15 at s = 0, always exact.
Residual verify_eq17(std::uint64_t x, const SequenceCache& cache);
/// M_{x^2} = 2 M_x - x^2 m_x^2 + sum mu(i) mu(j) frac(x^2 / (i j)). Exact for
/// x within the cache's rational bound, float (needs an s = 1 table) beyond.
/// Also checks floor(v) = v - frac(v) term by term against eq17.
Residual verify_eq18(std::uint64_t x, const SequenceCache& cache, const VerifyOptions& opts = {});

/// Dispatches on c.id after normalizing and validating the case.
Residual verify(const IdentityCase& c, const SequenceCache& cache, const VerifyOptions& opts = {});

/// Cache options large enough to verify every case. Exact s = 1 tables are
/// sized to the largest argument, up to `exact_cap`.
SequenceOptions cache_requirements(std::span<const IdentityCase> cases,
                                   std::uint64_t rational_bound = kDefaultRationalBound,
                                   std::uint64_t exact_cap = kDefaultExactTableCap);

/// Whether an exact s = 1 check of this identity at x fits the given limits.
bool exact_s1_feasible(IdentityId id, std::uint64_t x, std::uint64_t rational_bound,
                       std::uint64_t exact_cap);

} // namespace mertens
