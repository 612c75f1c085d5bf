#pragma once

#include "mertens/arith/exact_rational.hpp"
#include "mertens/int128.hpp"

#include <string>
#include <variant>

namespace mertens {

/// A scalar produced by an identity check: exact integer, exact rational, or double.
using Number = std::variant<i128, ExactRational, double>;

double to_double(const Number& value);
/// Integers in full; rationals and doubles as 17 significant digits.
std::string format_number(const Number& value);
/// Integers and rationals in full ("p" or "p/q"); doubles as 17 significant digits.
std::string format_exact(const Number& value);
/// printf("%.17g").
std::string format_double(double value);

enum class ResidualKind { exact, floating };

/// LHS - RHS of one identity at one point.
struct Residual {
    ResidualKind kind = ResidualKind::exact;
    /// The difference itself: i128 or ExactRational for exact residuals, a
    /// double for float ones.
    Number exact_value = i128{0};
    double float_value = 0.0;
    Number lhs = i128{0};
    Number rhs = i128{0};
    /// False when an auxiliary cross-check inside the verifier failed (for
    /// example a swapped summation order disagreeing).
    bool consistent = true;
    std::string detail;

    bool is_zero() const;
    /// Exact: the residual is identically zero. Float: |residual| <= tolerance.
    /// Both also require `consistent`.
    bool passes(double tolerance) const;
};

} // namespace mertens
