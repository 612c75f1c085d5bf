#include "mertens/arith/exact_sum.hpp"

#include "mertens/int128.hpp"

#include <bit>
#include <cmath>

namespace mertens {

namespace {

constexpr std::uint64_t kLow32 = 0xffffffffull;

int clz128(u128 w)
{
    auto hi = static_cast<std::uint64_t>(w >> 64);
    if (hi != 0)
        return std::countl_zero(hi);
    return 64 + std::countl_zero(static_cast<std::uint64_t>(w));
}

} // namespace

void ExactSum::add(double term, std::int64_t multiplier)
{
    if (multiplier == 0 || term == 0.0)
        return;
    if (!std::isfinite(term)) {
        special_ += term * static_cast<double>(multiplier);
        has_special_ = true;
        return;
    }
    auto bits = std::bit_cast<std::uint64_t>(term);
    bool negative = (bits >> 63) != 0;
    int biased = static_cast<int>((bits >> 52) & 0x7ff);
    std::uint64_t mant = bits & ((std::uint64_t{1} << 52) - 1);
    int pos = 0;
    if (biased != 0) {
        mant |= std::uint64_t{1} << 52;
        pos = biased - 1;
    }
    std::uint64_t mult = multiplier < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(multiplier)
                                        : static_cast<std::uint64_t>(multiplier);
    if (multiplier < 0)
        negative = !negative;

    u128 product = static_cast<u128>(mant) * mult;
    int limb = pos / kLimbBits;
    int shift = pos % kLimbBits;
    for (int t = 0; t < 4 && product != 0; ++t, product >>= 32) {
        std::uint64_t piece = (static_cast<std::uint64_t>(product) & kLow32) << shift;
        auto lo = static_cast<std::int64_t>(piece & kLow32);
        auto hi = static_cast<std::int64_t>(piece >> 32);
        if (negative) {
            limbs_[limb + t] -= lo;
            limbs_[limb + t + 1] -= hi;
        } else {
            limbs_[limb + t] += lo;
            limbs_[limb + t + 1] += hi;
        }
    }
    if (++pending_ >= kMaxPending)
        normalize();
}

void ExactSum::add(const ExactSum& other)
{
    ExactSum o = other;
    o.normalize();
    for (int i = 0; i < kLimbs; ++i)
        limbs_[i] += o.limbs_[i];
    if (o.has_special_) {
        special_ += o.special_;
        has_special_ = true;
    }
    if (++pending_ >= kMaxPending)
        normalize();
}

ExactSum ExactSum::negated() const
{
    ExactSum out = *this;
    for (auto& limb : out.limbs_)
        limb = -limb;
    out.special_ = -special_;
    return out;
}

void ExactSum::normalize()
{
    for (int i = 0; i + 1 < kLimbs; ++i) {
        std::int64_t carry = limbs_[i] >> 32;
        limbs_[i] -= carry * (std::int64_t{1} << 32);
        limbs_[i + 1] += carry;
    }
    pending_ = 0;
}

bool ExactSum::is_zero() const
{
    if (has_special_)
        return false;
    ExactSum t = *this;
    t.normalize();
    for (auto limb : t.limbs_)
        if (limb != 0)
            return false;
    return true;
}

double ExactSum::value() const
{
    if (has_special_)
        return special_;
    ExactSum t = *this;
    t.normalize();
    auto& limbs = t.limbs_;
    bool negative = limbs[kLimbs - 1] < 0;
    if (negative) {
        for (auto& limb : limbs)
            limb = -limb;
        t.normalize();
    }
    int h = kLimbs - 1;
    while (h >= 0 && limbs[h] == 0)
        --h;
    if (h < 0)
        return 0.0;
    if (h == kLimbs - 1 && limbs[h] > static_cast<std::int64_t>(kLow32))
        return negative ? -HUGE_VAL : HUGE_VAL;

    u128 window = 0;
    for (int k = h; k >= h - 3; --k) {
        std::uint64_t piece = k >= 0 ? static_cast<std::uint64_t>(limbs[k]) & kLow32 : 0;
        window = (window << 32) | piece;
    }
    bool sticky = false;
    for (int k = h - 4; k >= 0 && !sticky; --k)
        sticky = limbs[k] != 0;

    int lz = clz128(window);
    window <<= lz;
    auto top = static_cast<std::uint64_t>(window >> 64);
    auto rest = static_cast<std::uint64_t>(window);
    // Round-to-odd into the spare low bits; the conversion below then rounds
    // correctly to 53 bits.
    if (rest != 0 || sticky)
        top |= 1;
    int exponent = kLimbBits * (h - 3) + 64 - lz - 1074;
    double magnitude = std::ldexp(static_cast<double>(top), exponent);
    return negative ? -magnitude : magnitude;
}

} // namespace mertens
