#pragma once

#include <omega/bigreal.hpp>
#include <omega/int128.hpp>

#include <cstdint>

#include <stdexcept>
#include <string>
#include <vector>

namespace omega::constants {

// Largest precision request accepted by the series routines.
inline constexpr int max_digits = 2000;
// The prime-sum route for M'' sieves up to 10^digits.
inline constexpr int max_direct_prime_digits = 10;

// Raised when a finite-difference estimate cannot reach its target accuracy.
class PrecisionShortfall : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// --- elementary pieces -----------------------------------------------------

int mobius(int k);
int euler_phi(int k);

// B_n / n! at the current default precision (exact rational, then rounded).
Float bernoulli_over_factorial(int n);

// --- constants ----------------------------------------------------------------
// `digits` is the number of correct decimals requested; error_bound is below
// 10^-digits for all routines except the finite-difference one, which reports
// its achieved error.

// Brent-McMillan.
BigReal euler_gamma(int digits);

// zeta(k), integer k >= 2.
BigReal zeta_int(int k, int digits);

// zeta(s) for real s != 1, Euler-Maclaurin summation.
BigReal zeta_real(const Float& s, int digits);

// g(s) = (s - 1) zeta(s) / s, analytic at s = 1 where it equals 1.
BigReal zeta_ratio(const Float& s, int digits);

// M = gamma + sum_{k>=2} mu(k) log zeta(k) / k
BigReal meissel_mertens(int digits);

// M' = gamma + sum_{k>=2} phi(k) log zeta(k) / k
BigReal m_prime(int digits);

// M'' = sum_p 1/(p(p-1)) summed over sieved primes, with the tail bracket.
BigReal m_double_prime_direct(int digits);

// a_j = -int_1^inf {t} log^(j-1)(t) / t^2 dt, exact per unit interval plus an
// Euler-Maclaurin tail with a rigorous remainder bound. 1 <= j <= 10.
BigReal a_coeff_integral(int j, int digits);

// a_j = (-1)^(j-1)/j * g^(j)(1), central finite differences of zeta_ratio.
// 1 <= j <= 6. Throws PrecisionShortfall if the achieved error exceeds 10^-digits.
BigReal a_coeff_derivative(int j, int digits);

// --- exponential and logarithmic integrals --------------------------------------

// Double mode; relative error below 1e-14 away from the zero of Ei.
double ei(double x);
double li(double x);

// BigReal mode; relative error below 10^-digits.
BigReal ei(const Float& x, int digits);
BigReal li(const Float& x, int digits);

// --- the constants the bounds are stated with ------------------------------------

struct NamedConstant {
  std::string name;
  BigReal value;
};

struct ConstantSet {
  int digits = 0;
  BigReal gamma;
  BigReal M;
  BigReal M_prime;
  BigReal M_double_prime; // M' - M
  std::vector<BigReal> a; // a[0] is a_1
  BigReal alpha0;         // 45/32 - log log 32
  BigReal beta0;          // 1/2 - log log 2
  BigReal alpha1;         // 8/7 - log log 7
  BigReal beta1;          // M'

  std::vector<NamedConstant> named() const;
};

ConstantSet constant_set(int digits, int m_max = 5);

// S/n - log log n, correctly rounded at the working precision of `digits`.
BigReal average_minus_loglog(u128 sum, std::uint64_t n, int digits);

} // namespace omega::constants
