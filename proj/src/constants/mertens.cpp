#include <omega/constants.hpp>
#include <omega/sieve.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace omega::constants {

namespace {

struct MertensPair {
  BigReal M;
  BigReal M_prime;
};

// Both series share gamma and the log zeta(k) values:
//   M  = gamma + sum mu(k)  log zeta(k) / k
//   M' = gamma + sum phi(k) log zeta(k) / k
// With 0 < log zeta(k) <= zeta(k) - 1 <= 2^-k (1 + 2/(k-1)), the tail past K
// is at most 2^(1-K) for either series.
MertensPair mertens_series(int digits)
{
  if (digits < 1 || digits > max_digits)
    throw std::out_of_range("meissel_mertens: digits must be in [1, " +
                            std::to_string(max_digits) + "]");
  const int inner = digits + 10;
  const int working = inner + 5;
  PrecisionScope scope(static_cast<unsigned>(working));

  const BigReal gamma = euler_gamma(inner);
  Float m = rebase(gamma.value, static_cast<unsigned>(working));
  Float m_prime = m;
  Float term_error = 0;
  const Float target = ten_to_minus(digits + 3);

  int k = 2;
  Float tail = 1;
  for (;; ++k) {
    const BigReal z = zeta_int(k, inner);
    const Float lz = log(z.value);
    // |log z' - log z| <= err / (z - err); z >= 1
    const Float lerr = z.error_bound / (z.value - z.error_bound);
    const int mu = mobius(k);
    const int phi = euler_phi(k);
    m += mu * lz / k;
    m_prime += phi * lz / k;
    term_error += lerr * phi / k;
    tail = pow(Float(2), 1 - k);
    if (tail < target)
      break;
  }

  const Float rounding = ten_to_minus(working - 3);
  MertensPair r;
  r.M = BigReal{m, working, gamma.error_bound + term_error + tail + rounding};
  r.M_prime = BigReal{m_prime, working, gamma.error_bound + term_error + tail + rounding};
  return r;
}

} // namespace

BigReal meissel_mertens(int digits)
{
  return mertens_series(digits).M;
}

BigReal m_prime(int digits)
{
  return mertens_series(digits).M_prime;
}

BigReal m_double_prime_direct(int digits)
{
  if (digits < 1 || digits > max_direct_prime_digits)
    throw std::out_of_range("m_double_prime_direct: digits must be in [1, " +
                            std::to_string(max_direct_prime_digits) + "]");
  const auto bound = static_cast<std::uint64_t>(std::pow(10.0, digits));

  // Neumaier summation; terms are positive and decreasing.
  long double sum = 0;
  long double comp = 0;
  sieve::for_each_prime_segment(bound, [&](std::span<const std::uint64_t> primes) {
    for (std::uint64_t p : primes) {
      const long double pd = static_cast<long double>(p);
      const long double term = 1.0L / (pd * (pd - 1.0L));
      const long double t = sum + term;
      comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
  });

  const int working = 30;
  PrecisionScope scope(working);
  // sum_{p > P} 1/(p(p-1)) lies in [0, 1/P]; take the midpoint.
  const Float half_tail = Float(1) / (2 * Float(bound));
  BigReal r;
  r.working_digits = working;
  r.value = Float(sum) + Float(comp) + half_tail;
  r.error_bound = half_tail + Float(1e-17);
  return r;
}

} // namespace omega::constants
