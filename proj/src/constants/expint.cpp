#include <omega/constants.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace omega::constants {

namespace {

constexpr double euler_gamma_double = 0.57721566490153286060651209008240243;

// Ei(x) = gamma + log|x| + sum_{k>=1} x^k / (k k!)
double ei_series(double x)
{
  double power = 1;
  double sum = 0;
  for (int k = 1; k < 500; ++k) {
    power *= x / k;
    const double term = power / k;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum))
      break;
  }
  return euler_gamma_double + std::log(std::fabs(x)) + sum;
}

// e^x/x sum_k k!/x^k, truncated at the smallest term.
double ei_asymptotic(double x)
{
  double term = 1;
  double sum = 1;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next > term)
      break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum)
      break;
  }
  return std::exp(x) / x * sum;
}

// E1(y) for y > 1, modified Lentz on the continued fraction.
double e1_continued_fraction(double y)
{
  constexpr double tiny = 1e-300;
  double b = y + 1;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2;
    d = 1 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-17)
      break;
  }
  return h * std::exp(-y);
}

} // namespace

double ei(double x)
{
  if (x == 0)
    throw std::domain_error("ei: pole at 0");
  if (std::isnan(x))
    throw std::domain_error("ei: NaN argument");
  if (x > 0)
    return x <= 40 ? ei_series(x) : ei_asymptotic(x);
  const double y = -x;
  return y <= 1 ? ei_series(x) : -e1_continued_fraction(y);
}

double li(double x)
{
  if (!(x > 0))
    throw std::domain_error("li: needs x > 0");
  if (x == 1)
    throw std::domain_error("li: pole at x = 1");
  return ei(std::log(x));
}

BigReal ei(const Float& x, int digits)
{
  if (x == 0)
    throw std::domain_error("ei: pole at 0");
  if (digits < 1 || digits > max_digits)
    throw std::out_of_range("ei: digits out of range");
  const double ax = std::fabs(x.convert_to<double>());
  // negative arguments cancel about 2|x|/ln 10 digits
  const int guard = 10 + (x < 0 ? static_cast<int>(std::ceil(2 * ax / std::log(10.0))) : 0);
  const int working = digits + guard;
  PrecisionScope scope(static_cast<unsigned>(working));

  const Float xv = rebase(x, static_cast<unsigned>(working));
  const BigReal gamma = euler_gamma(working);
  Float power = 1;
  Float sum = 0;
  Float largest = 0;
  const Float eps = ten_to_minus(working);
  Float tail = 0;
  for (long k = 1;; ++k) {
    power = power * xv / k;
    const Float term = power / k;
    sum += term;
    largest = std::max<Float>(largest, abs(term));
    // past k > 2|x| successive |power| at least halve, so the rest of the
    // series is at most 2 |power| / (k + 1)
    if (k > 2 * ax + 1 && abs(power) < eps * largest) {
      tail = 2 * abs(power * xv) / ((k + 1) * (k + 1));
      break;
    }
  }

  BigReal r;
  r.working_digits = working;
  r.value = rebase(gamma.value, static_cast<unsigned>(working)) + log(abs(xv)) + sum;
  r.error_bound = gamma.error_bound + tail + ten_to_minus(working - 4) * (largest + 1);
  return r;
}

BigReal li(const Float& x, int digits)
{
  if (x <= 0)
    throw std::domain_error("li: needs x > 0");
  if (x == 1)
    throw std::domain_error("li: pole at x = 1");
  const int working = digits + 10;
  PrecisionScope scope(static_cast<unsigned>(working));
  const Float lx = log(rebase(x, static_cast<unsigned>(working)));
  BigReal r = ei(lx, digits + 5);
  // rounding in log x moves Ei by about (x / log x) * ulp(log x)
  r.error_bound += abs(rebase(x, static_cast<unsigned>(working)) / lx) * abs(lx) *
                   ten_to_minus(working - 1);
  return r;
}

} // namespace omega::constants
