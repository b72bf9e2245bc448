#include <omega/constants.hpp>

#include <gmpxx.h>
#include <mpfr.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace omega::constants {

int mobius(int k)
{
  if (k < 1)
    throw std::invalid_argument("mobius: k must be positive");
  int sign = 1;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p != 0)
      continue;
    k /= p;
    if (k % p == 0)
      return 0;
    sign = -sign;
  }
  return k > 1 ? -sign : sign;
}

int euler_phi(int k)
{
  if (k < 1)
    throw std::invalid_argument("euler_phi: k must be positive");
  int result = k;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p != 0)
      continue;
    while (k % p == 0)
      k /= p;
    result -= result / p;
  }
  if (k > 1)
    result -= result / k;
  return result;
}

namespace {

// B_n / n! as exact rationals, extended on demand.
class BernoulliTable {
public:
  mpq_class get(int n)
  {
    std::lock_guard lock(mutex_);
    extend(n);
    return scaled_[static_cast<std::size_t>(n)];
  }

private:
  void extend(int n)
  {
    // sum_{k=0}^{m} B_k/k! * 1/(m+1-k)! = 0 for m >= 1, i.e. the
    // coefficients of x/(e^x - 1).
    if (scaled_.empty())
      scaled_.emplace_back(1);
    while (static_cast<int>(scaled_.size()) <= n) {
      const int m = static_cast<int>(scaled_.size());
      mpq_class acc = 0;
      mpz_class fact = 1; // (m + 1 - k)!, built as k decreases
      for (int k = m - 1; k >= 0; --k) {
        fact *= (m + 1 - k);
        if (k > 1 && k % 2 == 1)
          continue;
        acc += scaled_[static_cast<std::size_t>(k)] / mpq_class(fact);
      }
      mpq_class b = -acc; // divided by 1/1!
      b.canonicalize();
      scaled_.push_back(b);
    }
  }

  std::mutex mutex_;
  std::vector<mpq_class> scaled_;
};

BernoulliTable& table()
{
  static BernoulliTable t;
  return t;
}

} // namespace

Float bernoulli_over_factorial(int n)
{
  if (n < 0)
    throw std::invalid_argument("bernoulli_over_factorial: negative index");
  if (n > 1 && n % 2 == 1)
    return Float(0);
  const mpq_class q = table().get(n);
  Float r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

} // namespace omega::constants
