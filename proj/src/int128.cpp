#include "mertens/int128.hpp"

#include <algorithm>

namespace mertens {

std::string to_string(i128 value)
{
    if (value == 0)
        return "0";
    bool negative = value < 0;
    u128 mag = negative ? u128(0) - static_cast<u128>(value) : static_cast<u128>(value);
    std::string out;
    while (mag != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (negative)
        out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace mertens
