#include <omega/constants.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omega::constants {

namespace {

// Pieces of the Euler-Maclaurin evaluation at cut N:
//   zeta(s) = head + N^(1-s)/(s-1) + N^(-s)/2 + corr + R,
//   head = sum_{n<N} n^-s,  corr = sum_{j<=p} B_2j/(2j)! s(s+1)...(s+2j-2) N^(-s-2j+1),
// and for real s > -(2p+1), |R| is at most the first omitted correction term.
struct EulerMaclaurin {
  Float head;
  Float n_pow_minus_s; // N^-s
  Float n_pow_one_minus_s; // N^(1-s)
  Float corr;
  Float error;
};

EulerMaclaurin euler_maclaurin(const Float& s, int working)
{
  const long cut = 2L * working + 20;
  const Float n_cut = cut;
  EulerMaclaurin em;
  em.head = 0;
  for (long n = 1; n < cut; ++n)
    em.head += pow(Float(n), -s);
  em.n_pow_minus_s = pow(n_cut, -s);
  em.n_pow_one_minus_s = em.n_pow_minus_s * n_cut;

  const Float eps = ten_to_minus(working + 3);
  const Float n2 = n_cut * n_cut;
  Float rising = s * em.n_pow_minus_s / n_cut; // s N^(-s-1)
  em.corr = 0;
  for (int j = 1;; ++j) {
    const Float term = bernoulli_over_factorial(2 * j) * rising;
    rising = rising * (s + (2 * j - 1)) * (s + 2 * j) / n2;
    const Float next = bernoulli_over_factorial(2 * j + 2) * rising;
    em.corr += term;
    if (abs(next) < eps) {
      em.error = abs(next);
      break;
    }
    if (j > 4 * working)
      throw std::runtime_error("euler_maclaurin: correction series failed to converge");
  }
  // accumulated rounding over `cut` power evaluations
  em.error += ten_to_minus(working - 4) * std::max<Float>(Float(1), abs(em.head));
  return em;
}

void check_digits(int digits, const char* who)
{
  if (digits < 1 || digits > max_digits)
    throw std::out_of_range(std::string(who) + ": digits must be in [1, " +
                            std::to_string(max_digits) + "]");
}

} // namespace

BigReal zeta_real(const Float& s, int digits)
{
  check_digits(digits, "zeta_real");
  if (s == 1)
    throw std::domain_error("zeta_real: pole at s = 1");
  if (s <= 0)
    throw std::domain_error("zeta_real: only s > 0 is supported");
  // zeta'(s) ~ -1/(s-1)^2 near the pole: keep s exact and add guard digits
  const Float dist = abs(s - 1);
  const int near_pole = dist < 1 ? static_cast<int>(ceil(-log10(dist))) : 0;
  const int working = digits + 10 + 2 * near_pole;
  PrecisionScope scope(static_cast<unsigned>(working));
  const Float x = rebase(s, std::max(static_cast<unsigned>(working), s.precision()));
  const EulerMaclaurin em = euler_maclaurin(x, working);
  BigReal r;
  r.working_digits = working;
  r.value = em.head + em.n_pow_one_minus_s / (x - 1) + em.n_pow_minus_s / 2 + em.corr;
  r.error_bound = em.error + ten_to_minus(working - 2) * abs(r.value);
  return r;
}

BigReal zeta_int(int k, int digits)
{
  if (k < 2)
    throw std::domain_error("zeta_int: k must be at least 2");
  PrecisionScope scope(static_cast<unsigned>(digits + 10));
  return zeta_real(Float(k), digits);
}

BigReal zeta_ratio(const Float& s, int digits)
{
  check_digits(digits, "zeta_ratio");
  if (s <= 0)
    throw std::domain_error("zeta_ratio: only s > 0 is supported");
  const int working = digits + 10;
  PrecisionScope scope(static_cast<unsigned>(working));
  const Float x = rebase(s, std::max(static_cast<unsigned>(working), s.precision()));
  const EulerMaclaurin em = euler_maclaurin(x, working);
  BigReal r;
  r.working_digits = working;
  const Float regular = em.head + em.n_pow_minus_s / 2 + em.corr;
  r.value = ((x - 1) * regular + em.n_pow_one_minus_s) / x;
  r.error_bound = em.error * abs(x - 1) / x + ten_to_minus(working - 2) * std::max<Float>(Float(1), abs(r.value));
  return r;
}

} // namespace omega::constants
