#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace omega {

using u128 = unsigned __int128;

std::string to_string(u128 value);

// Parses a non-negative decimal string; throws std::invalid_argument.
u128 parse_u128(std::string_view text);

inline double to_double(u128 value)
{
  return static_cast<double>(static_cast<long double>(value));
}

// floor(sqrt(n)) for the full 64-bit range
std::uint64_t isqrt(std::uint64_t n);

} // namespace omega
