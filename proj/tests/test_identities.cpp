#include <omega/identities.hpp>

#include "doctest.h"

#include <random>
#include <stdexcept>

using namespace omega;
using namespace omega::identities;

namespace {

bool prime_by_trial(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// term-by-term oracle with pi from trial division
HyperbolaSplit naive_split(std::uint64_t x, std::uint64_t y)
{
  std::vector<std::uint64_t> pi(x + 1, 0);
  for (std::uint64_t t = 1; t <= x; ++t)
    pi[t] = pi[t - 1] + (prime_by_trial(t) ? 1 : 0);
  HyperbolaSplit s;
  s.x = x;
  s.y = y;
  for (std::uint64_t p = 2; p <= y; ++p)
    if (prime_by_trial(p))
      s.term_prime_sum += x / p;
  for (std::uint64_t n = 1; n <= x / y; ++n)
    s.term_pi_sum += pi[x / n];
  s.term_correction = u128{x / y} * pi[y];
  return s;
}

} // namespace

TEST_CASE("hyperbola worked example x=100, y=10")
{
  const sieve::PrimeTable t = sieve::primes_up_to(100);
  const HyperbolaSplit s = hyperbola_rhs(100, 10, t);
  CHECK(s.term_prime_sum == 117);
  CHECK(s.term_pi_sum == 94);
  CHECK(s.term_correction == 40);
  CHECK(s.total() == 171);
  CHECK(s.total() == sieve::prefix_scan(100).sum_omega);
}

TEST_CASE("hyperbola boundary y = x")
{
  const sieve::PrimeTable t = sieve::primes_up_to(2);
  CHECK(hyperbola_rhs(2, 2, t).total() == 1);
  const sieve::PrimeTable t50 = sieve::primes_up_to(50);
  CHECK(hyperbola_rhs(50, 50, t50).total() == sieve::prefix_scan(50).sum_omega);
  CHECK(hyperbola_rhs(50, 1, t50).total() == sieve::prefix_scan(50).sum_omega);
}

TEST_CASE("hyperbola at x=10^6, y=1000 matches the sieve")
{
  const sieve::PrimeTable t = sieve::primes_up_to(1000000);
  CHECK(hyperbola_rhs(1000000, 1000, t).total() == sieve::prefix_scan(1000000).sum_omega);
}

TEST_CASE("hyperbola terms match the term-by-term oracle")
{
  const sieve::PrimeTable t = sieve::primes_up_to(3000);
  for (std::uint64_t x : {2ULL, 17ULL, 360ULL, 2999ULL})
    for (std::uint64_t y : {1ULL, 2ULL, 7ULL, 40ULL, 360ULL}) {
      if (y > x)
        continue;
      const HyperbolaSplit fast = hyperbola_rhs(x, y, t);
      const HyperbolaSplit slow = naive_split(x, y);
      CHECK(fast.term_prime_sum == slow.term_prime_sum);
      CHECK(fast.term_pi_sum == slow.term_pi_sum);
      CHECK(fast.term_correction == slow.term_correction);
    }
}

TEST_CASE("hyperbola total does not depend on y")
{
  const std::uint64_t x = 200000;
  const sieve::PrimeTable t = sieve::primes_up_to(x);
  const u128 expected = sieve::prefix_scan(x).sum_omega;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, x);
  for (int i = 0; i < 100; ++i)
    CHECK(hyperbola_rhs(x, pick(rng), t).total() == expected);
}

TEST_CASE("hyperbola rejects bad arguments")
{
  const sieve::PrimeTable t = sieve::primes_up_to(100);
  CHECK_THROWS_AS(hyperbola_rhs(10, 11, t), std::invalid_argument);
  CHECK_THROWS_AS(hyperbola_rhs(10, 0, t), std::invalid_argument);
  CHECK_THROWS_AS(hyperbola_rhs(101, 10, t), std::invalid_argument);
}

TEST_CASE("convolution_omega examples")
{
  CHECK(convolution_omega(1) == 0);
  CHECK(convolution_omega(12) == 2);
  CHECK(convolution_omega(9699690) == 8);
  CHECK_THROWS_AS(convolution_omega(0), std::invalid_argument);
}

TEST_CASE("convolution_omega equals omega for n <= 10^4")
{
  unsigned mismatches = 0;
  for (std::uint64_t n = 1; n <= 10000; ++n)
    if (convolution_omega(n) != sieve::factor_count_naive(n).omega)
      ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("is_prime agrees with trial division and known 64-bit cases")
{
  for (std::uint64_t n = 0; n <= 100000; ++n)
    REQUIRE(is_prime(n) == prime_by_trial(n));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(18446744073709551615ULL));
  CHECK(is_prime(2305843009213693951ULL)); // 2^61 - 1
  CHECK_FALSE(is_prime(3215031751ULL));    // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ULL));
  CHECK_FALSE(is_prime(4294967291ULL * 4294967279ULL));
}
