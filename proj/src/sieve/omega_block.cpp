#include <omega/sieve.hpp>

#include <stdexcept>
#include <string>

namespace omega::sieve {

namespace {

void check_block_args(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table)
{
  if (lo == 0)
    throw std::invalid_argument("omega_block: lo must be at least 1");
  if (lo >= hi)
    throw std::invalid_argument("omega_block: empty range");
  const std::uint64_t root = isqrt(hi - 1);
  if (table.limit() < root)
    throw std::invalid_argument("omega_block: prime table limit " + std::to_string(table.limit()) +
                                " does not cover sqrt(" + std::to_string(hi - 1) + ")");
}

} // namespace

OmegaBlock omega_block(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table)
{
  check_block_args(lo, hi, table);
  const std::uint64_t len = hi - lo;
  const std::uint64_t top = hi - 1;
  const std::uint64_t root = isqrt(top);

  OmegaBlock block{lo, hi, std::vector<std::uint8_t>(len, 0), std::vector<std::uint8_t>(len, 0)};
  // Product of the prime powers found so far; whatever is left of k afterwards
  // is 1 or a single prime above sqrt(hi - 1).
  std::vector<std::uint64_t> found(len, 1);

  for (std::uint64_t p : table.primes()) {
    if (p > root)
      break;
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t k = first; k < hi; k += p) {
      const std::uint64_t i = k - lo;
      ++block.omega[i];
      ++block.big_omega[i];
      found[i] *= p;
    }
    std::uint64_t q = p;
    while (q <= top / p) {
      q *= p;
      first = (lo + q - 1) / q * q;
      for (std::uint64_t k = first; k < hi; k += q) {
        const std::uint64_t i = k - lo;
        ++block.big_omega[i];
        found[i] *= p;
      }
    }
  }

  for (std::uint64_t i = 0; i < len; ++i) {
    if (found[i] != lo + i) {
      ++block.omega[i];
      ++block.big_omega[i];
    }
  }
  return block;
}

FactorCounts factor_count_naive(std::uint64_t n)
{
  if (n == 0)
    throw std::invalid_argument("factor_count_naive: n must be positive");
  FactorCounts c;
  auto strip = [&](std::uint64_t d) {
    if (n % d != 0)
      return;
    ++c.omega;
    do {
      n /= d;
      ++c.big_omega;
    } while (n % d == 0);
  };
  strip(2);
  strip(3);
  // 6k - 1, 6k + 1
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) {
    ++c.omega;
    ++c.big_omega;
  }
  return c;
}

u128 j_diff(const PrefixState& state)
{
  return state.sum_big_omega - state.sum_omega;
}

namespace serial {

OmegaBlock omega_block(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table)
{
  check_block_args(lo, hi, table);
  const std::uint64_t len = hi - lo;
  const std::uint64_t root = isqrt(hi - 1);

  OmegaBlock block{lo, hi, std::vector<std::uint8_t>(len, 0), std::vector<std::uint8_t>(len, 0)};
  std::vector<std::uint64_t> rest(len);
  for (std::uint64_t i = 0; i < len; ++i)
    rest[i] = lo + i;

  for (std::uint64_t p : table.primes()) {
    if (p > root)
      break;
    for (std::uint64_t k = (lo + p - 1) / p * p; k < hi; k += p) {
      const std::uint64_t i = k - lo;
      ++block.omega[i];
      do {
        rest[i] /= p;
        ++block.big_omega[i];
      } while (rest[i] % p == 0);
    }
  }
  for (std::uint64_t i = 0; i < len; ++i) {
    if (rest[i] > 1) {
      ++block.omega[i];
      ++block.big_omega[i];
    }
  }
  return block;
}

} // namespace serial

} // namespace omega::sieve
