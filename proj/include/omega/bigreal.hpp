#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace omega {

// Variable-precision MPFR float. Results of mixed-precision arithmetic carry
// the larger operand precision; new values take the thread default.
using Float = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

// Sets the thread's default Float precision (decimal digits) for its lifetime.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

// Copy of v carried at the given decimal precision.
Float rebase(const Float& v, unsigned digits10);

// 10^(-digits) at the current default precision.
Float ten_to_minus(int digits);

// An arbitrary-precision real together with a bound on its absolute error:
// the true quantity lies in [value - error_bound, value + error_bound].
struct BigReal {
  Float value;
  int working_digits = 0;
  Float error_bound;

  // value rounded to nearest with `decimals` digits after the point
  std::string fixed(int decimals) const;
  // error_bound rounded upward, scientific notation
  std::string error_string() const;
  double to_double() const { return value.convert_to<double>(); }
  bool contains(const Float& v) const;
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a);

// Fixed-point rendering shared by BigReal and the tests.
std::string format_fixed(const Float& v, int decimals);
std::string format_scientific_up(const Float& v, int significant);

} // namespace omega
