#pragma once

// Explicit remainder envelopes for the summatory omega functions and the
// auxiliary functions they are built from. Every function is a template over
// the real type so the same formula serves double scans and MPFR spot checks
// (Float from bigreal.hpp), e.g. at x = e^14167 where double overflows.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace omega::envelopes {

namespace detail {

template <class Real>
Real factorial(int m)
{
  Real f = 1;
  for (int i = 2; i <= m; ++i)
    f *= i;
  return f;
}

template <class Real>
Real euler_e()
{
  using std::exp;
  return exp(Real(1));
}

template <class Real>
void require(bool ok, const char* what)
{
  if (!ok)
    throw std::domain_error(what);
}

} // namespace detail

// R(x) = x exp(-sqrt(log x)/3), the unconditional |pi(x) - li(x)| envelope.
template <class Real>
Real remainder_R(const Real& x)
{
  using std::exp, std::log, std::sqrt;
  detail::require<Real>(x > Real(1.2), "remainder_R: needs x > 1.2");
  return x * exp(-sqrt(log(x)) / 3);
}

// R^(x) = sqrt(x) log x, the envelope under RH.
template <class Real>
Real remainder_Rhat(const Real& x)
{
  using std::log, std::sqrt;
  detail::require<Real>(x >= Real(2), "remainder_Rhat: needs x >= 2");
  return sqrt(x) * log(x);
}

// int_y^inf R(t)/t^2 dt
template <class Real>
Real tail_integral_R(const Real& y)
{
  using std::exp, std::log, std::sqrt;
  detail::require<Real>(y > Real(1.2), "tail_integral_R: needs y > 1.2");
  const Real r = sqrt(log(y));
  return exp(-r / 3) * (6 * r + 18);
}

// int_y^inf R^(t)/t^2 dt
template <class Real>
Real tail_integral_Rhat(const Real& y)
{
  using std::log, std::sqrt;
  detail::require<Real>(y >= Real(2), "tail_integral_Rhat: needs y >= 2");
  return (2 * log(y) + 4) / sqrt(y);
}

// Antiderivative of log^n(t)/t^2:  -(1/t) sum_{j=0}^n n!/(n-j)! log^(n-j) t.
template <class Real>
Real antideriv_logpow(int n, const Real& t)
{
  using std::log;
  detail::require<Real>(n >= 0, "antideriv_logpow: n must be non-negative");
  detail::require<Real>(t > Real(0), "antideriv_logpow: t must be positive");
  const Real lt = log(t);
  // Horner in log t: coefficient of log^(n-j) is n!/(n-j)!
  Real acc = 1;
  for (int k = n; k >= 1; --k)
    acc = acc * lt / k + 1;
  // acc = sum_{i=0}^n log^i t / i!, so multiply by n!
  return -detail::factorial<Real>(n) * acc / t;
}

// Envelope of |sum_{n<=x} omega(n) - main term|, unconditional, order m.
template <class Real>
Real envelope_E_omega(const Real& x, int m)
{
  using std::exp, std::log, std::pow, std::sqrt;
  detail::require<Real>(m >= 1, "envelope_E_omega: m must be at least 1");
  detail::require<Real>(x >= detail::euler_e<Real>(), "envelope_E_omega: needs x >= e");
  const Real lx = log(x);
  const Real rl = sqrt(lx);
  const Real fm = detail::factorial<Real>(m);
  const Real two_m1 = pow(Real(2), m + 1);
  const Real sqrt2 = sqrt(Real(2));
  return two_m1 * fm * x / pow(lx, m + 1) + (two_m1 + 1) * detail::euler_e<Real>() * fm * sqrt(x) / lx +
         x * exp(-sqrt2 / 6 * rl) * (lx / 2 + 3 * sqrt2 * rl + 21) + sqrt(x);
}

// The J(x) transfer adds 33 sqrt(x)/log x.
template <class Real>
Real omega_transfer_term(const Real& x)
{
  using std::log, std::sqrt;
  return 33 * sqrt(x) / log(x);
}

template <class Real>
Real envelope_E_Omega(const Real& x, int m)
{
  return envelope_E_omega(x, m) + omega_transfer_term(x);
}

// RH-conditional envelope, order m.
template <class Real>
Real envelope_Ehat_omega(const Real& x, int m)
{
  using std::log, std::pow, std::sqrt;
  detail::require<Real>(m >= 1, "envelope_Ehat_omega: m must be at least 1");
  detail::require<Real>(x >= detail::euler_e<Real>(), "envelope_Ehat_omega: needs x >= e");
  const Real lx = log(x);
  const Real fm = detail::factorial<Real>(m);
  const Real c = pow(Real(3) / 2, m + 1);
  const Real x23 = pow(x, Real(2) / 3);
  return c * fm * x / pow(lx, m + 1) + 4 * x23 * lx + 9 * x23 +
         (c + 1) * detail::euler_e<Real>() * fm * x23 / lx + 15 * sqrt(x) * lx;
}

template <class Real>
Real envelope_Ehat_Omega(const Real& x, int m)
{
  return envelope_Ehat_omega(x, m) + omega_transfer_term(x);
}

// h(z) with h(sqrt(log x)) = (log^2 x / x) (E_omega(x, 1) - 4x/log^2 x).
template <class Real>
Real h_corollary(const Real& z)
{
  using std::exp, std::sqrt;
  detail::require<Real>(z > Real(0), "h_corollary: needs z > 0");
  const Real sqrt2 = sqrt(Real(2));
  const Real z2 = z * z;
  return z2 * z2 * exp(-sqrt2 / 6 * z) * (z2 / 2 + 3 * sqrt2 * z + 21) +
         z2 * exp(-z2 / 2) * (z2 + 5 * detail::euler_e<Real>());
}

// kappa(x) = 25 sqrt(floor x) / log(floor x)
template <class Real>
Real kappa(const Real& x)
{
  using std::floor, std::log, std::sqrt;
  detail::require<Real>(x >= Real(2), "kappa: needs x >= 2");
  const Real fx = floor(x);
  return 25 * sqrt(fx) / log(fx);
}

template <class Real>
struct HEnvelopes {
  Real h1;
  Real h2;
  Real h3;
};

// The intermediate envelopes at a free cut y with x^delta <= y <= x^Delta.
// Unconditional: h1 from the prime sum, h2 from the pi(x/n) sum, h3 the total.
// Conditional (RH): the hatted variants.
template <class Real>
HEnvelopes<Real> h_envelopes(const Real& x, const Real& y, int m, const Real& delta,
                             const Real& Delta, bool conditional)
{
  using std::exp, std::log, std::pow, std::sqrt;
  detail::require<Real>(m >= 1, "h_envelopes: m must be at least 1");
  detail::require<Real>(x >= detail::euler_e<Real>(), "h_envelopes: needs x >= e");
  detail::require<Real>(delta > Real(0) && delta <= Delta && Delta < Real(1),
                        "h_envelopes: needs 0 < delta <= Delta < 1");
  const Real lo = pow(x, delta);
  const Real hi = pow(x, Delta);
  const Real slack = Real(1e-12) * hi; // y = x^delta computed two ways may differ by an ulp
  detail::require<Real>(lo > Real(1.2), "h_envelopes: needs x^delta > 1.2");
  detail::require<Real>(y >= lo - slack && y <= hi + slack, "h_envelopes: needs x^delta <= y <= x^Delta");

  const Real lx = log(x);
  const Real ly = log(y);
  const Real fm = detail::factorial<Real>(m);
  const Real inv_delta = pow(1 / delta, m + 1);
  const Real e = detail::euler_e<Real>();
  const Real common = inv_delta * fm * x / pow(lx, m + 1) + (1 + inv_delta) * e * fm * hi / lx;

  HEnvelopes<Real> h;
  if (!conditional) {
    const Real decay = x * exp(-sqrt(ly) / 3);
    h.h1 = decay * (6 * sqrt(ly) + 19) + y;
    h.h2 = common + decay * (1 + log(x / y));
    h.h3 = h.h1 + h.h2 + decay;
  } else {
    const Real ry = x / sqrt(y);
    h.h1 = ry * (3 * ly + 4) + y;
    h.h2 = common + 2 * ry * (ly + 2) + 15 * sqrt(x) * lx;
    h.h3 = h.h1 + h.h2 + ry * ly;
  }
  return h;
}

// x log log x + M x + x sum_{j<=m} a_j / log^j x
template <class Real>
Real main_term(const Real& x, const Real& mertens, std::span<const Real> a, int m)
{
  using std::log;
  detail::require<Real>(m >= 0 && static_cast<std::size_t>(m) <= a.size(),
                        "main_term: not enough coefficients");
  const Real lx = log(x);
  Real series = 0;
  Real power = 1;
  for (int j = 1; j <= m; ++j) {
    power *= lx;
    series += a[static_cast<std::size_t>(j - 1)] / power;
  }
  return x * log(lx) + mertens * x + x * series;
}

// --- CSV grid for the command-line front end --------------------------------

enum class Which { E_omega, E_Omega, Ehat_omega, Ehat_Omega, h };

Which parse_which(const std::string& name);
std::string to_string(Which which);

struct GridRow {
  double x;
  double value;
  double main;
  double ratio;
};

struct MainTermConstants {
  double M;
  double M_prime;
  std::vector<double> a;
};

// `steps` log-spaced points from lo to hi. For the E variants `main` is the
// asymptotic main term and ratio = value / main; for h the column is the
// threshold 1 and ratio = h(z).
std::vector<GridRow> envelope_grid(Which which, int m, double lo, double hi, int steps,
                                   const MainTermConstants& constants);

} // namespace omega::envelopes
