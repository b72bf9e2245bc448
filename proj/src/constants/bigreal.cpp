#include <omega/bigreal.hpp>

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <stdexcept>

namespace omega {

namespace {

std::string asprintf_mpfr(const char* format, int width, mpfr_srcptr x)
{
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, format, width, x) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, decltype(&mpfr_free_str)> holder(raw, &mpfr_free_str);
  return std::string(raw);
}

// Rounding slack for one arithmetic step at the result precision.
Float ulp_slack(const Float& v)
{
  Float slack = abs(v);
  const long bits = static_cast<long>(mpfr_get_prec(v.backend().data()));
  mpfr_mul_2si(slack.backend().data(), slack.backend().data(), -bits + 1, MPFR_RNDU);
  return slack;
}

} // namespace

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Float::default_precision())
{
  Float::default_precision(digits10);
}

PrecisionScope::~PrecisionScope()
{
  Float::default_precision(saved_);
}

Float rebase(const Float& v, unsigned digits10)
{
  return Float(v, digits10);
}

Float ten_to_minus(int digits)
{
  Float ten = 10;
  return pow(ten, -digits);
}

std::string format_fixed(const Float& v, int decimals)
{
  std::string s = asprintf_mpfr("%.*RNf", decimals, v.backend().data());
  // "-0.000" is not a useful rendering of a value that rounds to zero
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string format_scientific_up(const Float& v, int significant)
{
  return asprintf_mpfr("%.*RUe", std::max(0, significant - 1), v.backend().data());
}

std::string BigReal::fixed(int decimals) const
{
  return format_fixed(value, decimals);
}

std::string BigReal::error_string() const
{
  return format_scientific_up(error_bound, 3);
}

bool BigReal::contains(const Float& v) const
{
  return abs(v - value) <= error_bound;
}

BigReal operator+(const BigReal& a, const BigReal& b)
{
  BigReal r;
  r.working_digits = std::min(a.working_digits, b.working_digits);
  r.value = a.value + b.value;
  r.error_bound = a.error_bound + b.error_bound + ulp_slack(r.value);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b)
{
  return a + (-b);
}

BigReal operator-(const BigReal& a)
{
  return BigReal{-a.value, a.working_digits, a.error_bound};
}

} // namespace omega
