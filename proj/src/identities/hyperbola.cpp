#include <omega/identities.hpp>

#include <stdexcept>
#include <string>

namespace omega::identities {

HyperbolaSplit hyperbola_rhs(std::uint64_t x, std::uint64_t y, const sieve::PrimeTable& table)
{
  if (y == 0 || y > x)
    throw std::invalid_argument("hyperbola_rhs: need 1 <= y <= x");
  if (table.limit() < x)
    throw std::invalid_argument("hyperbola_rhs: prime table limit " + std::to_string(table.limit()) +
                                " below x = " + std::to_string(x));

  HyperbolaSplit split{x, y};
  for (std::uint64_t p : table.primes()) {
    if (p > y)
      break;
    split.term_prime_sum += x / p;
  }
  const std::uint64_t cut = x / y;
  for (std::uint64_t n = 1; n <= cut; ++n)
    split.term_pi_sum += table.count_up_to(x / n);
  split.term_correction = static_cast<u128>(cut) * table.count_up_to(y);
  return split;
}

} // namespace omega::identities
