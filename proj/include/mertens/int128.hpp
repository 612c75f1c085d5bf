#pragma once

#include <cstdint>
#include <string>

namespace mertens {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 value);

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

} // namespace mertens
