#pragma once

#include "mertens/int128.hpp"

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <string>

namespace mertens {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator. Arithmetic never rounds.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(std::int64_t n); // NOLINT(google-explicit-constructor)
    template <std::integral T>
        requires(!std::same_as<T, bool> && (sizeof(T) < 8 || std::is_signed_v<T>))
    ExactRational(T n) // NOLINT(google-explicit-constructor)
        : ExactRational(static_cast<std::int64_t>(n))
    {
    }
    ExactRational(std::int64_t n, std::int64_t d);
    explicit ExactRational(i128 n);
    explicit ExactRational(const mpz_class& n);
    ExactRational(const mpz_class& n, const mpz_class& d);
    explicit ExactRational(mpq_class q);

    /// Parses "p" or "p/q" in base 10.
    static ExactRational parse(const std::string& text);

    const mpq_class& get() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Greatest integer not above the value.
    mpz_class floor() const;
    /// value - floor(value), in [0, 1).
    ExactRational frac() const;

    double to_double() const { return value_.get_d(); }
    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const;

    ExactRational operator-() const { return ExactRational(mpq_class(-value_)); }
    ExactRational& operator+=(const ExactRational& rhs);
    ExactRational& operator-=(const ExactRational& rhs);
    ExactRational& operator*=(const ExactRational& rhs);
    ExactRational& operator/=(const ExactRational& rhs);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b)
    {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

mpz_class to_mpz(i128 v);
/// Throws OutOfRange when the integer does not fit.
i128 to_i128(const mpz_class& v);

} // namespace mertens
