#pragma once

#include <array>
#include <cstdint>

namespace mertens {

/// Order-independent summation of doubles.
///
/// Every added term is accumulated exactly in a wide fixed-point register
/// (bit 0 is 2^-1074, the smallest subnormal), so the result depends only on
/// the multiset of terms and not on the order they arrive in. value() rounds
/// the exact total once, to nearest with ties to even (a subnormal total may
/// round twice). Adding `t` with multiplier k is exactly the same as adding
/// `t` k times.
class ExactSum {
public:
    void add(double term, std::int64_t multiplier = 1);
    void subtract(double term) { add(term, -1); }
    void add(const ExactSum& other);
    ExactSum negated() const;

    double value() const;
    bool is_zero() const;

private:
    static constexpr int kLimbBits = 32;
    static constexpr int kLimbs = 72;
    // Normalize before any limb can overflow: each add puts < 2^33 into a limb.
    static constexpr std::uint32_t kMaxPending = 1u << 28;

    void normalize();

    std::array<std::int64_t, kLimbs> limbs_{};
    std::uint32_t pending_ = 0;
    double special_ = 0.0; // sum of non-finite terms
    bool has_special_ = false;
};

/// Neumaier's improved Kahan summation; used for ascending prefix tables.
class CompensatedSum {
public:
    void add(double term)
    {
        double t = sum_ + term;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (term >= 0 ? term : -term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace mertens
