#include <omega/int128.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omega {

std::string to_string(u128 value)
{
  if (value == 0)
    return "0";
  std::string s;
  while (value != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(std::string_view text)
{
  if (text.empty())
    throw std::invalid_argument("empty integer");
  constexpr u128 max = ~u128{0};
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a decimal integer: " + std::string(text));
    const unsigned d = static_cast<unsigned>(c - '0');
    if (value > (max - d) / 10)
      throw std::out_of_range("integer exceeds 128 bits: " + std::string(text));
    value = value * 10 + d;
  }
  return value;
}

std::uint64_t isqrt(std::uint64_t n)
{
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n)
    --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

} // namespace omega
