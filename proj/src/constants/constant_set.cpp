#include <omega/constants.hpp>

#include <stdexcept>
#include <string>

namespace omega::constants {

namespace {

// q - log log n at `working` digits; only rounding error.
BigReal rational_minus_loglog(long numerator, long denominator, long n, int working)
{
  PrecisionScope scope(static_cast<unsigned>(working));
  BigReal r;
  r.working_digits = working;
  r.value = Float(numerator) / denominator - log(log(Float(n)));
  r.error_bound = ten_to_minus(working - 2);
  return r;
}

} // namespace

BigReal average_minus_loglog(u128 sum, std::uint64_t n, int digits)
{
  if (n < 2)
    throw std::domain_error("average_minus_loglog: needs n >= 2");
  const int working = digits + 10;
  PrecisionScope scope(static_cast<unsigned>(working));
  Float s = 0;
  // split the 128-bit sum into two 64-bit halves
  const auto high = static_cast<std::uint64_t>(sum >> 64);
  const auto low = static_cast<std::uint64_t>(sum);
  s = Float(high);
  s = ldexp(s, 64) + Float(low);
  BigReal r;
  r.working_digits = working;
  r.value = s / Float(n) - log(log(Float(n)));
  r.error_bound = ten_to_minus(working - 2);
  return r;
}

ConstantSet constant_set(int digits, int m_max)
{
  if (m_max < 1 || m_max > 10)
    throw std::out_of_range("constant_set: m_max must be in [1, 10]");
  const int working = digits + 10;
  ConstantSet set;
  set.digits = digits;
  set.gamma = euler_gamma(digits);
  set.M = meissel_mertens(digits);
  set.M_prime = m_prime(digits);
  set.M_double_prime = set.M_prime - set.M;
  for (int j = 1; j <= m_max; ++j)
    set.a.push_back(a_coeff_integral(j, digits));
  set.alpha0 = rational_minus_loglog(45, 32, 32, working);
  set.beta0 = rational_minus_loglog(1, 2, 2, working);
  set.alpha1 = rational_minus_loglog(8, 7, 7, working);
  set.beta1 = set.M_prime;
  return set;
}

std::vector<NamedConstant> ConstantSet::named() const
{
  std::vector<NamedConstant> out{{"gamma", gamma},
                                 {"M", M},
                                 {"M_prime", M_prime},
                                 {"M_double_prime", M_double_prime}};
  for (std::size_t j = 0; j < a.size(); ++j)
    out.push_back({"a_" + std::to_string(j + 1), a[j]});
  out.push_back({"alpha0", alpha0});
  out.push_back({"beta0", beta0});
  out.push_back({"alpha1", alpha1});
  out.push_back({"beta1", beta1});
  return out;
}

} // namespace omega::constants
