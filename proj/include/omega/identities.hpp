#pragma once

#include <omega/int128.hpp>
#include <omega/sieve.hpp>

#include <cstdint>

namespace omega::identities {

// The three terms of the hyperbola split of sum_{n<=x} omega(n) at cut y.
struct HyperbolaSplit {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  u128 term_prime_sum = 0;  // sum_{p<=y} floor(x/p)
  u128 term_pi_sum = 0;     // sum_{n<=x/y} pi(x/n)
  u128 term_correction = 0; // floor(x/y) pi(y)

  u128 total() const { return term_prime_sum + term_pi_sum - term_correction; }
};

// Requires 1 <= y <= x and table.limit() >= x.
HyperbolaSplit hyperbola_rhs(std::uint64_t x, std::uint64_t y, const sieve::PrimeTable& table);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// sum_{d|n} [d prime], by divisor enumeration.
unsigned convolution_omega(std::uint64_t n);

} // namespace omega::identities
