#include <omega/constants.hpp>

#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <mpfr.h>

#include <cmath>

using namespace omega;
using namespace omega::constants;

namespace {

// 100-digit test vector for the Euler-Mascheroni constant.
const char* const gamma_vector =
  "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";

// First Stieltjes constant, test vector.
const char* const stieltjes1_vector = "-0.0728158454836767248605863758749547";

template <class F>
Float mpfr_value(unsigned digits, F&& fill)
{
  PrecisionScope scope(digits);
  Float v = 0;
  fill(v.backend().data());
  return v;
}

Float parse(const char* text, unsigned digits)
{
  PrecisionScope scope(digits);
  return Float(text);
}

bool within(const Float& a, const Float& b, const Float& tol)
{
  return abs(a - b) <= tol;
}

double quad(const std::function<double(double)>& f, double a, double b)
{
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

} // namespace

TEST_CASE("euler_gamma examples")
{
  CHECK(euler_gamma(10).fixed(10) == "0.5772156649");
  CHECK(euler_gamma(1).fixed(1) == "0.6");
}

TEST_CASE("euler_gamma at 100 digits matches the test vector and MPFR")
{
  const BigReal g = euler_gamma(100);
  CHECK(g.error_bound < parse("1e-100", 120));
  // the vector is truncated, so it carries its own 1e-100
  CHECK(within(g.value, parse(gamma_vector, 120), g.error_bound + parse("1e-100", 120)));
  const Float oracle = mpfr_value(220, [](mpfr_ptr v) { mpfr_const_euler(v, MPFR_RNDN); });
  CHECK(g.contains(oracle));
  const BigReal g300 = euler_gamma(300);
  const Float oracle300 = mpfr_value(340, [](mpfr_ptr v) { mpfr_const_euler(v, MPFR_RNDN); });
  CHECK(within(g300.value, oracle300, parse("1e-300", 340)));
}

TEST_CASE("euler_gamma rejects precision beyond the build limit")
{
  CHECK_THROWS_AS(euler_gamma(max_digits + 1), std::out_of_range);
  CHECK_THROWS_AS(euler_gamma(0), std::out_of_range);
}

TEST_CASE("zeta_int examples")
{
  CHECK(zeta_int(2, 10).fixed(10) == "1.6449340668");
  CHECK(zeta_int(3, 10).fixed(10) == "1.2020569032");
  CHECK_THROWS_AS(zeta_int(1, 10), std::domain_error);
}

TEST_CASE("zeta(2) equals pi^2/6 at 60 digits")
{
  const BigReal z = zeta_int(2, 60);
  const Float pi = mpfr_value(90, [](mpfr_ptr v) { mpfr_const_pi(v, MPFR_RNDN); });
  PrecisionScope scope(90);
  CHECK(z.error_bound < parse("1e-60", 90));
  CHECK(z.contains(pi * pi / 6));
}

TEST_CASE("zeta(3) lies in the direct-summation bracket")
{
  // sum_{n<=N} n^-3 plus a tail in (1/(2(N+1)^2), 1/(2N^2))
  const long N = 100000;
  PrecisionScope scope(40);
  Float partial = 0;
  for (long n = N; n >= 1; --n)
    partial += 1 / (Float(n) * n * n);
  const Float lo = partial + 1 / (2 * Float(N + 1) * (N + 1));
  const Float hi = partial + 1 / (2 * Float(N) * N);
  const BigReal z = zeta_int(3, 30);
  CHECK(z.value > lo);
  CHECK(z.value < hi);
  CHECK(hi - lo < Float("1e-14"));
}

TEST_CASE("zeta_int matches mpfr_zeta_ui for k = 2..40")
{
  for (int k = 2; k <= 40; ++k) {
    const BigReal z = zeta_int(k, 50);
    const Float oracle =
      mpfr_value(80, [k](mpfr_ptr v) { mpfr_zeta_ui(v, static_cast<unsigned long>(k), MPFR_RNDN); });
    CHECK_MESSAGE(within(z.value, oracle, z.error_bound + parse("1e-70", 80)), "k=", k);
  }
}

TEST_CASE("zeta_int for large k is 1 + 2^-k + 3^-k + ...")
{
  const BigReal z = zeta_int(100, 60);
  PrecisionScope scope(80);
  const Float lead = pow(Float(2), -100) + pow(Float(3), -100);
  CHECK(within(z.value - 1, lead, parse("1e-58", 80)));
  CHECK(zeta_int(200, 50).fixed(50) == "1." + std::string(50, '0'));
}

TEST_CASE("zeta_real matches mpfr_zeta off the integers")
{
  for (std::string s : {"0.5", "1.0001", "1.5", "2.5", "7.25"}) {
    const Float arg = parse(s.c_str(), 60);
    const BigReal z = zeta_real(arg, 40);
    const Float oracle = mpfr_value(60, [&](mpfr_ptr v) { mpfr_zeta(v, arg.backend().data(), MPFR_RNDN); });
    CHECK_MESSAGE(within(z.value, oracle, z.error_bound + parse("1e-50", 60)),
                  "s=", s, " value=", z.fixed(45), " oracle=", format_fixed(oracle, 45), " bound=", z.error_string(), " diff=", format_scientific_up(abs(z.value - oracle), 3), " tol=", format_scientific_up(z.error_bound + parse("1e-50", 60), 3));
  }
  CHECK_THROWS_AS(zeta_real(Float(1), 20), std::domain_error);
}

TEST_CASE("zeta_ratio is analytic at 1 with value 1")
{
  const BigReal g1 = zeta_ratio(Float(1), 30);
  CHECK(g1.contains(Float(1)));
  CHECK(g1.fixed(30) == "1." + std::string(30, '0'));
  // g(s) = (s-1) zeta(s)/s just off the singularity
  PrecisionScope scope(60);
  const Float s("1.00000001");
  const BigReal z = zeta_real(s, 45);
  const BigReal g = zeta_ratio(s, 45);
  CHECK(within(g.value, (s - 1) * z.value / s, parse("1e-40", 60)));
}

TEST_CASE("M and M' reproduce the 50-digit reference strings")
{
  CHECK(meissel_mertens(50).fixed(50) == "0.26149721284764278375542683860869585905156664826120");
  CHECK(m_prime(50).fixed(50) == "1.03465388189743791161979429846463825467030798434439");
}

TEST_CASE("M'' from the series and from the prime sum agree")
{
  const BigReal series = m_prime(30) - meissel_mertens(30);
  CHECK(series.fixed(10) == "0.7731566690");
  const BigReal direct = m_double_prime_direct(6);
  CHECK(direct.fixed(6) == "0.773157");
  CHECK(direct.error_bound < parse("1e-6", 30));
  CHECK(abs(direct.value - series.value) <= direct.error_bound + series.error_bound);
  CHECK_THROWS_AS(m_double_prime_direct(max_direct_prime_digits + 1), std::out_of_range);
}

TEST_CASE("a_1 = gamma - 1 from the unit-interval integral")
{
  const BigReal a1 = a_coeff_integral(1, 30);
  CHECK(a1.fixed(30) == "-0.422784335098467139393487909918");
  const BigReal g = euler_gamma(40);
  PrecisionScope scope(60);
  CHECK(abs(a1.value - (g.value - 1)) < Float("1e-30"));
  CHECK(a1.value < 0);
}

TEST_CASE("a_2 = gamma + gamma_1 - 1")
{
  const BigReal a2 = a_coeff_integral(2, 30);
  const BigReal g = euler_gamma(40);
  PrecisionScope scope(60);
  const Float expected = g.value + Float(stieltjes1_vector) - 1;
  CHECK(abs(a2.value - expected) < Float("1e-30"));
  CHECK(a2.fixed(10) == "-0.4956001806");
}

TEST_CASE("a_j: integral and derivative routes agree for j = 1..5")
{
  for (int j = 1; j <= 5; ++j) {
    const BigReal a = a_coeff_integral(j, 40);
    const BigReal b = a_coeff_derivative(j, 40);
    PrecisionScope scope(60);
    const Float diff = abs(a.value - b.value);
    CHECK_MESSAGE(diff <= a.error_bound + b.error_bound, "j=", j);
    CHECK_MESSAGE(diff < Float("1e-20"), "j=", j);
  }
}

TEST_CASE("a_j argument checks")
{
  CHECK_THROWS_AS(a_coeff_integral(0, 20), std::out_of_range);
  CHECK_THROWS_AS(a_coeff_integral(11, 20), std::out_of_range);
  CHECK_THROWS_AS(a_coeff_derivative(0, 20), std::out_of_range);
  CHECK_THROWS_AS(a_coeff_derivative(7, 20), std::out_of_range);
}

TEST_CASE("li examples")
{
  CHECK(li(2.0) == doctest::Approx(1.04516378011749278).epsilon(1e-14));
  CHECK(li(1e6) == doctest::Approx(78627.549159462171).epsilon(1e-14));
  CHECK(li(1e6) > 78498.0);
  CHECK_THROWS_AS(li(1.0), std::domain_error);
  CHECK_THROWS_AS(li(0.0), std::domain_error);
  CHECK_THROWS_AS(ei(0.0), std::domain_error);
  CHECK_THROWS_AS(ei(Float(0), 20), std::domain_error);
  CHECK_THROWS_AS(li(Float(1), 20), std::domain_error);
}

TEST_CASE("li agrees with principal-value quadrature")
{
  // li(x) = int_0^x (1/log t - 1/(t-1)) dt + log|x - 1|, the integrand being smooth at t = 1
  const auto smooth = [](double t) { return 1 / std::log(t) - 1 / (t - 1); };
  const double li2 = quad(smooth, 0, 1) + quad(smooth, 1, 2);
  CHECK(li(2.0) == doctest::Approx(li2).epsilon(1e-8));
  const double tail = quad([](double t) { return 1 / std::log(t); }, 2, 1e6);
  CHECK(li(1e6) == doctest::Approx(li2 + tail).epsilon(1e-8));
}

TEST_CASE("li derivative is 1/log x")
{
  for (double x : {10.0, 1e3, 1e6}) {
    const double h = x * 1e-5;
    const double fd = (li(x + h) - li(x - h)) / (2 * h);
    CHECK(fd == doctest::Approx(1 / std::log(x)).epsilon(1e-6));
  }
}

TEST_CASE("ei matches mpfr_eint in double and BigReal modes")
{
  for (double x : {-30.0, -3.0, -0.5, 0.3, 1.0, 5.0, 20.0, 40.0, 100.0, 700.0}) {
    const Float arg = parse(std::to_string(x).c_str(), 60);
    const Float oracle = mpfr_value(60, [&](mpfr_ptr v) { mpfr_eint(v, arg.backend().data(), MPFR_RNDN); });
    const double o = oracle.convert_to<double>();
    CHECK_MESSAGE(std::abs(ei(x) - o) <= 1e-14 * std::abs(o), "x=", x);
    const BigReal b = ei(arg, 40);
    CHECK_MESSAGE(abs(b.value - oracle) <= abs(oracle) * parse("1e-40", 60), "x=", x);
  }
}

TEST_CASE("li in BigReal mode")
{
  const BigReal l2 = li(Float(2), 40);
  const Float log2 = mpfr_value(60, [](mpfr_ptr v) { mpfr_const_log2(v, MPFR_RNDN); });
  const Float oracle = mpfr_value(60, [&](mpfr_ptr v) { mpfr_eint(v, log2.backend().data(), MPFR_RNDN); });
  CHECK(abs(l2.value - oracle) < parse("1e-39", 60));
  CHECK(l2.fixed(17) == "1.04516378011749278");
}

TEST_CASE("the pi-li integral constant M + log log 2 - li(2)/2")
{
  const BigReal m = meissel_mertens(30);
  const BigReal l2 = li(Float(2), 30);
  PrecisionScope scope(40);
  const Float value = m.value + log(log(Float(2))) - l2.value / 2;
  CHECK(format_fixed(value, 17) == "-0.62759759779276794");
}

TEST_CASE("mobius and euler_phi")
{
  const int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  const int phi[] = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (int k = 1; k <= 12; ++k) {
    CHECK(mobius(k) == mu[k - 1]);
    CHECK(euler_phi(k) == phi[k - 1]);
  }
  CHECK(mobius(30) == -1);
  CHECK(euler_phi(360) == 96);
  CHECK_THROWS_AS(mobius(0), std::invalid_argument);
  CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
}

TEST_CASE("bernoulli_over_factorial")
{
  PrecisionScope scope(40);
  CHECK(abs(bernoulli_over_factorial(2) - Float(1) / 12) < Float("1e-38"));
  CHECK(abs(bernoulli_over_factorial(4) + Float(1) / 720) < Float("1e-38"));
  CHECK(bernoulli_over_factorial(3) == 0);
}

TEST_CASE("constant_set invariants")
{
  const ConstantSet c = constant_set(40, 3);
  REQUIRE(c.a.size() == 3);
  PrecisionScope scope(60);
  const Float tol = Float("1e-40");
  CHECK(abs(c.M_prime.value - (c.M.value + c.M_double_prime.value)) <=
        c.M_prime.error_bound + c.M.error_bound + c.M_double_prime.error_bound);
  CHECK(c.beta1.value == c.M_prime.value);
  CHECK(abs(c.alpha0.value - (Float(45) / 32 - log(log(Float(32))))) < tol);
  CHECK(abs(c.beta0.value - (Float(1) / 2 - log(log(Float(2))))) < tol);
  CHECK(abs(c.alpha1.value - (Float(8) / 7 - log(log(Float(7))))) < tol);
  CHECK(c.named().size() == 4 + 3 + 4);
  CHECK(c.named().front().name == "gamma");
  CHECK_THROWS_AS(constant_set(20, 0), std::out_of_range);
  CHECK_THROWS_AS(constant_set(20, 11), std::out_of_range);
}

TEST_CASE("average_minus_loglog reproduces the witness constants")
{
  const ConstantSet c = constant_set(30, 1);
  PrecisionScope scope(50);
  const Float tol = Float("1e-30");
  CHECK(abs(average_minus_loglog(45, 32, 30).value - c.alpha0.value) < tol);
  CHECK(abs(average_minus_loglog(1, 2, 30).value - c.beta0.value) < tol);
  CHECK(abs(average_minus_loglog(8, 7, 30).value - c.alpha1.value) < tol);
  // 19/15 - log log 15 exceeds M
  CHECK(average_minus_loglog(19, 15, 30).value > c.M.value);
  CHECK_THROWS_AS(average_minus_loglog(0, 1, 30), std::domain_error);
}

TEST_CASE("BigReal formatting")
{
  PrecisionScope scope(30);
  BigReal b{Float("-0.125"), 30, Float("1e-20")};
  CHECK(b.fixed(2) == "-0.12");
  CHECK(b.fixed(4) == "-0.1250");
  CHECK(b.contains(Float("-0.125")));
  CHECK_FALSE(b.contains(Float("-0.124")));
  const BigReal sum = b + b;
  CHECK(sum.value == Float("-0.25"));
  CHECK(sum.error_bound >= Float("2e-20"));
}
