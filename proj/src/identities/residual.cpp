#include "mertens/identities/residual.hpp"

#include <cmath>
#include <cstdio>

namespace mertens {

double to_double(const Number& value)
{
    if (const auto* i = std::get_if<i128>(&value))
        return static_cast<double>(*i);
    if (const auto* r = std::get_if<ExactRational>(&value))
        return r->to_double();
    return std::get<double>(value);
}

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_number(const Number& value)
{
    if (const auto* i = std::get_if<i128>(&value))
        return to_string(*i);
    if (const auto* r = std::get_if<ExactRational>(&value))
        return r->is_integer() ? r->to_string() : format_double(r->to_double());
    return format_double(std::get<double>(value));
}

std::string format_exact(const Number& value)
{
    if (const auto* r = std::get_if<ExactRational>(&value))
        return r->to_string();
    return format_number(value);
}

bool Residual::is_zero() const
{
    if (const auto* i = std::get_if<i128>(&exact_value))
        return *i == 0;
    if (const auto* r = std::get_if<ExactRational>(&exact_value))
        return r->is_zero();
    return std::get<double>(exact_value) == 0.0;
}

bool Residual::passes(double tolerance) const
{
    if (!consistent)
        return false;
    if (kind == ResidualKind::exact)
        return is_zero();
    return std::isfinite(float_value) && std::fabs(float_value) <= tolerance;
}

} // namespace mertens
