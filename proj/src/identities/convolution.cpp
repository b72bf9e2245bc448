#include <omega/identities.hpp>

#include <array>
#include <stdexcept>

namespace omega::identities {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1)
      result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

} // namespace

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  // These bases decide every n < 3.3e24.
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0)
      return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t v = pow_mod(a, d, n);
    if (v == 1 || v == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      v = mul_mod(v, v, n);
      if (v == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

unsigned convolution_omega(std::uint64_t n)
{
  if (n == 0)
    throw std::invalid_argument("convolution_omega: n must be positive");
  unsigned count = 0;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0)
      continue;
    const std::uint64_t e = n / d;
    count += is_prime(d) ? 1u : 0u;
    if (e != d)
      count += is_prime(e) ? 1u : 0u;
  }
  return count;
}

} // namespace omega::identities
