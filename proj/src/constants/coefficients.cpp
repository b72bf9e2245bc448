#include <omega/constants.hpp>
#include <omega/envelopes.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace omega::constants {

namespace {

// int_a^inf log^b(t) t^-p dt for p > 1:
//   a^(1-p) sum_{i=0}^b b!/(b-i)! log^(b-i)(a) / (p-1)^(i+1)
Float log_power_tail(int b, long p, const Float& a)
{
  const Float la = log(a);
  const Float q = Float(p - 1);
  Float sum = 0;
  Float coeff = 1; // b!/(b-i)!
  Float lpow = pow(la, b);
  Float qpow = q;
  for (int i = 0; i <= b; ++i) {
    sum += coeff * lpow / qpow;
    coeff *= (b - i);
    if (i < b)
      lpow /= la;
    qpow *= q;
  }
  return pow(a, Float(1 - p)) * sum;
}

// f(t) = log^(j-1)(t)/t^2. Its m-th derivative is t^(-2-m) sum_b c[b] log^b t,
// with c' [b] = -(2+m) c[b] + (b+1) c[b+1].
class LogPowerDerivatives {
public:
  explicit LogPowerDerivatives(int degree) : c_(static_cast<std::size_t>(degree) + 1, Float(0))
  {
    c_.back() = 1;
  }

  int order() const { return order_; }

  void advance()
  {
    const std::size_t n = c_.size();
    for (std::size_t b = 0; b < n; ++b) {
      Float next = -(2 + order_) * c_[b];
      if (b + 1 < n)
        next += static_cast<long>(b + 1) * c_[b + 1];
      c_[b] = next;
    }
    ++order_;
  }

  Float value_at(const Float& t) const
  {
    const Float lt = log(t);
    Float acc = 0;
    for (std::size_t b = c_.size(); b-- > 0;)
      acc = acc * lt + c_[b];
    return acc * pow(t, Float(-2 - order_));
  }

  // Upper bound for int_a^inf |f^(m)(t)| dt.
  Float abs_tail(const Float& a) const
  {
    Float bound = 0;
    for (std::size_t b = 0; b < c_.size(); ++b)
      if (c_[b] != 0)
        bound += abs(c_[b]) * log_power_tail(static_cast<int>(b), 2 + order_, a);
    return bound;
  }

private:
  std::vector<Float> c_;
  int order_ = 0;
};

} // namespace

BigReal a_coeff_integral(int j, int digits)
{
  if (j < 1 || j > 10)
    throw std::out_of_range("a_coeff_integral: j must be in [1, 10]");
  if (digits < 1 || digits > max_digits)
    throw std::out_of_range("a_coeff_integral: digits out of range");
  const int working = digits + 15 + j;
  PrecisionScope scope(static_cast<unsigned>(working));

  const int degree = j - 1;
  const long cut = 2L * working + 40;

  // sum over [n, n+1], n < cut:  {t} = t - n, so the piece is
  //   [log^j t / j] - n [F(t)],  F the antiderivative of log^(j-1)t / t^2.
  Float body = 0;
  Float log_prev = 0; // log^j(1) / j
  Float anti_prev = envelopes::antideriv_logpow<Float>(degree, Float(1));
  for (long n = 1; n < cut; ++n) {
    const Float t = Float(n + 1);
    const Float log_next = pow(log(t), j) / j;
    const Float anti_next = envelopes::antideriv_logpow<Float>(degree, t);
    body += (log_next - log_prev) - n * (anti_next - anti_prev);
    log_prev = log_next;
    anti_prev = anti_next;
  }

  // Tail from N: {t} = 1/2 + P1(t), P_r(t) the periodic Bernoulli functions
  // B~_r(t)/r!. Repeated integration by parts gives
  //   int_N^inf P1 f = -sum_{k<=K} B_2k/(2k)! f^(2k-2)(N) - int_N^inf P_2K f^(2K-1),
  // and |P_2K| <= |B_2K|/(2K)!.
  const Float n_cut = Float(cut);
  const Float half_integral = -envelopes::antideriv_logpow<Float>(degree, n_cut) / 2;
  LogPowerDerivatives deriv(degree);
  Float correction = 0;
  Float remainder = 0;
  const Float target = ten_to_minus(working - 2);
  for (int k = 1;; ++k) {
    // deriv currently holds order 2k - 2
    const Float b = bernoulli_over_factorial(2 * k);
    correction -= b * deriv.value_at(n_cut);
    deriv.advance(); // order 2k - 1
    remainder = abs(b) * deriv.abs_tail(n_cut);
    if (remainder < target)
      break;
    deriv.advance();
    if (k > 4 * working)
      throw std::runtime_error("a_coeff_integral: tail expansion failed to converge");
  }

  BigReal r;
  r.working_digits = working;
  r.value = -(body + half_integral + correction);
  r.error_bound = remainder + ten_to_minus(working - 6);
  return r;
}

namespace {

// Fornberg weights for the `order`-th derivative at 0 on the nodes
// -half..half (unit spacing).
std::vector<Float> central_weights(int order, int half)
{
  const int count = 2 * half + 1;
  std::vector<Float> x(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    x[static_cast<std::size_t>(i)] = i - half;

  // c[k][i]: weight of node i for the k-th derivative
  std::vector<std::vector<Float>> c(static_cast<std::size_t>(order) + 1,
                                    std::vector<Float>(static_cast<std::size_t>(count), Float(0)));
  Float c1 = 1;
  Float c4 = x[0];
  c[0][0] = 1;
  for (int i = 1; i < count; ++i) {
    const int mn = std::min(i, order);
    Float c2 = 1;
    const Float c5 = c4;
    c4 = x[static_cast<std::size_t>(i)];
    for (int jj = 0; jj < i; ++jj) {
      const Float c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(jj)];
      c2 *= c3;
      if (jj == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][jj] = (c4 * c[k][jj] - k * c[k - 1][jj]) / c3;
      c[0][jj] = c4 * c[0][jj] / c3;
    }
    c1 = c2;
  }
  return c[static_cast<std::size_t>(order)];
}

struct StencilResult {
  Float derivative;
  Float roundoff;
};

StencilResult stencil_derivative(int order, int half, const Float& h, int g_digits,
                                 std::vector<std::pair<int, BigReal>>& cache)
{
  const std::vector<Float> w = central_weights(order, half);
  Float sum = 0;
  Float abs_weights = 0;
  Float g_error = 0;
  for (int i = -half; i <= half; ++i) {
    const Float& wi = w[static_cast<std::size_t>(i + half)];
    if (wi == 0)
      continue;
    const BigReal* g = nullptr;
    for (const auto& [node, value] : cache)
      if (node == i)
        g = &value;
    if (g == nullptr) {
      cache.emplace_back(i, zeta_ratio(1 + i * h, g_digits));
      g = &cache.back().second;
    }
    sum += wi * g->value;
    abs_weights += abs(wi);
    g_error = std::max<Float>(g_error, g->error_bound);
  }
  const Float hj = pow(h, order);
  return {sum / hj, abs_weights * g_error / hj};
}

} // namespace

BigReal a_coeff_derivative(int j, int digits)
{
  if (j < 1 || j > 6)
    throw std::out_of_range("a_coeff_derivative: j must be in [1, 6]");
  if (digits < 1 || 3 * digits > max_digits)
    throw std::out_of_range("a_coeff_derivative: digits out of range");
  const int working = 3 * digits + 10;
  PrecisionScope scope(static_cast<unsigned>(working));

  // h ~ 10^(-digits/(j+1)); the stencil with `half` = j + 2 nodes each side is
  // accurate to O(h^(j+4)) or better, the wider one is the error estimate.
  const Float h = pow(Float(10), -Float(digits) / (j + 1));
  std::vector<std::pair<int, BigReal>> cache;
  cache.reserve(64);
  const int half = j + 2;
  const StencilResult narrow = stencil_derivative(j, half, h, 3 * digits, cache);
  const StencilResult wide = stencil_derivative(j, half + 1, h, 3 * digits, cache);

  // a_j = (-1)^(j-1)/j g^(j)(1)
  const int sign = (j % 2 == 1) ? 1 : -1;
  BigReal r;
  r.working_digits = working;
  r.value = sign * wide.derivative / j;
  r.error_bound = (abs(wide.derivative - narrow.derivative) + wide.roundoff + narrow.roundoff) / j;
  if (r.error_bound > ten_to_minus(digits))
    throw PrecisionShortfall("a_coeff_derivative: stencil error " + r.error_string() +
                             " exceeds 1e-" + std::to_string(digits));
  return r;
}

} // namespace omega::constants
