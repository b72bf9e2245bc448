#include <omega/sieve.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace omega::sieve {

namespace {

constexpr std::uint64_t segment_odds = std::uint64_t{1} << 20;

std::vector<std::uint64_t> small_primes(std::uint64_t limit)
{
  std::vector<std::uint64_t> primes;
  if (limit < 2)
    return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i])
      continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i)
      composite[j] = true;
  }
  return primes;
}

// Upper bound for pi(x), Rosser-Schoenfeld.
double pi_upper_bound(std::uint64_t x)
{
  if (x < 17)
    return 7.0;
  const double xd = static_cast<double>(x);
  return 1.25506 * xd / std::log(xd);
}

} // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
  : limit_(limit), primes_(std::move(primes))
{
}

std::uint64_t PrimeTable::count_up_to(std::uint64_t x) const
{
  if (x > limit_)
    throw std::out_of_range("prime_count: " + std::to_string(x) + " exceeds table limit " +
                            std::to_string(limit_));
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

void for_each_prime_segment(std::uint64_t limit,
                            const std::function<void(std::span<const std::uint64_t>)>& visit)
{
  if (limit < 2)
    return;
  const std::uint64_t root = isqrt(limit);
  const std::vector<std::uint64_t> base = small_primes(root);

  std::vector<std::uint64_t> found{2};
  visit(found);

  std::vector<std::uint8_t> composite(segment_odds);
  // Segment covers the odd numbers lo, lo + 2, ..., lo + 2 (count - 1).
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * segment_odds) {
    const std::uint64_t count = std::min(segment_odds, (limit - lo) / 2 + 1);
    std::fill_n(composite.begin(), count, std::uint8_t{0});
    const std::uint64_t last = lo + 2 * (count - 1);
    for (std::uint64_t p : base) {
      if (p == 2)
        continue;
      if (p * p > last)
        break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0)
        start += p;
      for (std::uint64_t m = (start - lo) / 2; m < count; m += p)
        composite[m] = 1;
    }
    found.clear();
    for (std::uint64_t i = 0; i < count; ++i)
      if (!composite[i])
        found.push_back(lo + 2 * i);
    visit(found);
    if (last >= limit)
      break;
  }
}

PrimeTable primes_up_to(std::uint64_t limit, const SieveLimits& limits)
{
  if (limit < 2)
    throw std::invalid_argument("primes_up_to: limit must be at least 2");
  const double bytes = pi_upper_bound(limit) * sizeof(std::uint64_t);
  if (bytes > static_cast<double>(limits.max_table_bytes))
    throw std::length_error("primes_up_to: limit " + std::to_string(limit) +
                            " exceeds the table memory budget");

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(pi_upper_bound(limit)));
  for_each_prime_segment(limit, [&](std::span<const std::uint64_t> seg) {
    primes.insert(primes.end(), seg.begin(), seg.end());
  });
  return PrimeTable(limit, std::move(primes));
}

std::uint64_t prime_count(std::uint64_t x, const PrimeTable& table)
{
  return table.count_up_to(x);
}

} // namespace omega::sieve
