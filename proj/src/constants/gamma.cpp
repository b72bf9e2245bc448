#include <omega/constants.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace omega::constants {

BigReal euler_gamma(int digits)
{
  if (digits < 1 || digits > max_digits)
    throw std::out_of_range("euler_gamma: digits must be in [1, " + std::to_string(max_digits) + "]");
  const int working = digits + 20;
  PrecisionScope scope(static_cast<unsigned>(working));

  // gamma = U/V - O(e^(-4n)), U = sum (n^k/k!)^2 (H_k - log n), V = sum (n^k/k!)^2.
  const auto n = static_cast<unsigned long>(std::ceil((digits + 2) * std::log(10.0) / 4.0)) + 1;
  const Float nn = Float(n) * n;
  Float a = -log(Float(n));
  Float b = 1;
  Float u = a;
  Float v = 1;
  const Float eps = ten_to_minus(working);
  for (unsigned long k = 1;; ++k) {
    const Float kk = Float(k) * k;
    b = b * nn / kk;
    a = (a * nn / k + b) / k;
    u += a;
    v += b;
    if (k > n && b < eps * v && abs(a) < eps * abs(u))
      break;
  }

  BigReal r;
  r.working_digits = working;
  r.value = u / v;
  const Float pi = boost::math::constants::pi<Float>();
  r.error_bound = pi * exp(-4 * Float(n)) + ten_to_minus(working - 5);
  return r;
}

} // namespace omega::constants
