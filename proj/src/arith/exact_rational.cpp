#include "mertens/arith/exact_rational.hpp"

#include "mertens/errors.hpp"

#include <utility>

namespace mertens {

mpz_class to_mpz(i128 v)
{
    bool negative = v < 0;
    u128 mag = negative ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return negative ? mpz_class(-out) : out;
}

i128 to_i128(const mpz_class& v)
{
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126)
        throw OutOfRange("integer does not fit in 128 bits");
    mpz_class mag = abs(v);
    mpz_class hi = mag >> 64;
    mpz_class lo = mag - (hi << 64);
    u128 r = (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
    return sgn(v) < 0 ? -static_cast<i128>(r) : static_cast<i128>(r);
}

ExactRational::ExactRational(std::int64_t n) : value_(static_cast<long>(n)) {}

ExactRational::ExactRational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw PreconditionError("zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
    value_.canonicalize();
}

ExactRational::ExactRational(i128 n) : value_(to_mpz(n)) {}

ExactRational::ExactRational(const mpz_class& n) : value_(n) {}

ExactRational::ExactRational(const mpz_class& n, const mpz_class& d)
{
    if (sgn(d) == 0)
        throw PreconditionError("zero denominator");
    value_ = mpq_class(n, d);
    value_.canonicalize();
}

ExactRational::ExactRational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

ExactRational ExactRational::parse(const std::string& text)
{
    mpq_class q;
    if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0)
        throw PreconditionError("malformed rational: " + text);
    return ExactRational(std::move(q));
}

mpz_class ExactRational::floor() const
{
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

ExactRational ExactRational::frac() const { return *this - ExactRational(floor()); }

std::string ExactRational::to_string() const
{
    if (is_integer())
        return value_.get_num().get_str();
    return value_.get_str();
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator*=(const ExactRational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs)
{
    if (rhs.is_zero())
        throw PreconditionError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

} // namespace mertens
