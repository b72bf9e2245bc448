#include <omega/envelopes.hpp>
#include <omega/verifier.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace omega::verifier {

namespace {

namespace env = omega::envelopes;

std::string num(long double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

std::string num(const Float& v, int decimals)
{
  return format_fixed(v, decimals);
}

VerificationReport spot_report(ClaimId claim, std::uint64_t lo, std::uint64_t hi)
{
  VerificationReport r;
  r.claim = claim;
  r.n_start = lo;
  r.n_end = hi;
  r.checkpoint = hi;
  return r;
}

Check upper_check(std::string name, long double value, long double upper)
{
  Check c;
  c.name = std::move(name);
  c.value = num(value);
  c.upper = num(upper);
  c.ratio = static_cast<double>(value / upper);
  c.ok = value <= upper;
  return c;
}

struct PrimeSums {
  long double reciprocal = 0;
  std::uint64_t count = 0;
};

// sum_{p<=y} 1/p and pi(y) at every target, one streaming pass.
std::vector<PrimeSums> prime_sums_at(std::span<const std::uint64_t> targets)
{
  std::vector<std::size_t> order(targets.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });
  std::vector<PrimeSums> out(targets.size());
  if (targets.empty())
    return out;
  const std::uint64_t limit = std::max<std::uint64_t>(2, targets[order.back()]);

  // Neumaier compensated summation, ascending p
  long double sum = 0;
  long double comp = 0;
  std::uint64_t count = 0;
  std::size_t next = 0;
  const auto emit_below = [&](std::uint64_t p) {
    while (next < order.size() && targets[order[next]] < p) {
      out[order[next]] = {sum + comp, count};
      ++next;
    }
  };
  sieve::for_each_prime_segment(limit, [&](std::span<const std::uint64_t> primes) {
    for (std::uint64_t p : primes) {
      emit_below(p);
      const long double term = 1.0L / static_cast<long double>(p);
      const long double t = sum + term;
      if (std::fabs(sum) >= std::fabs(term))
        comp += (sum - t) + term;
      else
        comp += (term - t) + sum;
      sum = t;
      ++count;
    }
  });
  emit_below(limit + 1);
  return out;
}

} // namespace

long double prime_reciprocal_sum(std::uint64_t y)
{
  const std::uint64_t t[] = {y};
  return prime_sums_at(t).front().reciprocal;
}

VerificationReport check_main_term(std::span<const std::uint64_t> xs, std::span<const int> ms,
                                   int threads)
{
  if (xs.empty() || ms.empty())
    throw std::invalid_argument("check_main_term: needs at least one x and one m");
  for (std::uint64_t x : xs)
    if (x < 3)
      throw std::invalid_argument("check_main_term: needs x >= e");
  const auto& c = scan_constants().exact;
  for (int m : ms)
    if (m < 1 || static_cast<std::size_t>(m) > c.a.size())
      throw std::invalid_argument("check_main_term: m out of range");

  sieve::ScanOptions opts;
  opts.emit = sieve::Emit::none;
  opts.threads = threads;
  const std::vector<sieve::PrefixState> states = sieve::prefix_states_at(xs, opts);

  std::vector<long double> a;
  for (const BigReal& aj : c.a)
    a.push_back(aj.value.convert_to<long double>());
  const long double M = c.M.value.convert_to<long double>();
  const long double Mp = c.M_prime.value.convert_to<long double>();

  VerificationReport r = spot_report(ClaimId::ENVELOPE_M1, *std::min_element(xs.begin(), xs.end()),
                                     *std::max_element(xs.begin(), xs.end()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long double x = static_cast<long double>(xs[i]);
    const long double s_omega = static_cast<long double>(states[i].sum_omega);
    const long double s_big = static_cast<long double>(states[i].sum_big_omega);
    for (int m : ms) {
      const std::span<const long double> as(a);
      const long double d_omega = std::fabs(s_omega - env::main_term<long double>(x, M, as, m));
      const long double d_big = std::fabs(s_big - env::main_term<long double>(x, Mp, as, m));
      const std::string at = " x=" + std::to_string(xs[i]) + " m=" + std::to_string(m);
      r.checks.push_back(upper_check("omega E" + at, d_omega, env::envelope_E_omega(x, m)));
      r.checks.push_back(upper_check("Omega E" + at, d_big, env::envelope_E_Omega(x, m)));
      r.checks.push_back(upper_check("omega Ehat" + at, d_omega, env::envelope_Ehat_omega(x, m)));
      r.checks.push_back(upper_check("Omega Ehat" + at, d_big, env::envelope_Ehat_Omega(x, m)));
    }
  }
  finalize(r);
  return r;
}

VerificationReport mertens_sum_check(std::span<const std::uint64_t> ys)
{
  if (ys.empty())
    throw std::invalid_argument("mertens_sum_check: needs at least one y");
  for (std::uint64_t y : ys)
    if (y < 2)
      throw std::invalid_argument("mertens_sum_check: needs y >= 2");
  const long double M = scan_constants().exact.M.value.convert_to<long double>();
  const std::vector<PrimeSums> sums = prime_sums_at(ys);
  VerificationReport r = spot_report(ClaimId::MERTENS_SUM, *std::min_element(ys.begin(), ys.end()),
                                     *std::max_element(ys.begin(), ys.end()));
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const long double y = static_cast<long double>(ys[i]);
    const long double ly = std::log(y);
    const long double diff = std::fabs(sums[i].reciprocal - std::log(ly) - M);
    r.checks.push_back(
      upper_check("y=" + std::to_string(ys[i]), diff, (3 * ly + 4) / std::sqrt(y)));
  }
  finalize(r);
  return r;
}

VerificationReport ineq_33x_crossing()
{
  PrecisionScope scope(30);
  const auto f = [](const Float& x) { return sqrt(x) - 33 * log(x); };
  // f < 0 at 10^4 and f > 0 at 10^6; bisect, then settle on integers
  Float lo = 10000;
  Float hi = 1000000;
  while (hi - lo > 1) {
    const Float mid = (lo + hi) / 2;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  std::uint64_t x = static_cast<std::uint64_t>(ceil(lo).convert_to<double>());
  while (f(Float(x)) <= 0)
    ++x;
  while (f(Float(x - 1)) > 0)
    --x;
  const std::uint64_t quoted = 155652;

  VerificationReport r = spot_report(ClaimId::INEQ_33X, 10000, 1000000);
  Check first;
  first.name = "least integer with sqrt(x) > 33 log x";
  first.value = std::to_string(x);
  first.upper = std::to_string(quoted);
  first.ok = x <= quoted;
  r.checks.push_back(first);

  Check before;
  before.name = "sqrt(x) - 33 log x at x*-1";
  before.value = num(f(Float(x - 1)), 25);
  before.upper = "0";
  before.ok = f(Float(x - 1)) <= 0;
  r.checks.push_back(before);

  Check small;
  small.name = "sqrt(x) - 33 log x at 10000";
  small.value = num(f(Float(10000)), 25);
  small.upper = "0";
  small.ok = f(Float(10000)) < 0;
  r.checks.push_back(small);

  const Float xq = Float(quoted);
  const Float lhs = 33 * sqrt(xq) / log(xq);
  const Float rhs = xq / (log(xq) * log(xq));
  Check at;
  at.name = "33 sqrt(x)/log x < x/log^2 x at 155652";
  at.value = num(lhs, 25);
  at.upper = num(rhs, 25);
  at.ok = lhs < rhs;
  r.checks.push_back(at);
  finalize(r);
  return r;
}

VerificationReport pi_li_integral_check(std::uint64_t y)
{
  if (y < 3)
    throw std::invalid_argument("pi_li_integral_check: needs y >= 3");
  const auto& c = scan_constants().exact;
  const std::string quoted = "-0.62759759779276794";
  VerificationReport r = spot_report(ClaimId::PI_LI_INTEGRAL, 2, y);

  PrecisionScope scope(45);
  const BigReal li2 = constants::li(Float(2), 40);
  const Float loglog2 = log(log(Float(2)));
  const Float identity = c.M.value + loglog2 - li2.value / 2;

  Check rounded;
  rounded.name = "M + log log 2 - li(2)/2 to 17 decimals";
  rounded.value = format_fixed(identity, 17);
  rounded.lower = quoted;
  rounded.upper = quoted;
  rounded.ok = rounded.value == quoted;
  r.checks.push_back(rounded);

  // int_2^y (pi(t) - li(t))/t^2 dt
  //   = sum_{p<=y} 1/p - pi(y)/y - log log y + li(y)/y + log log 2 - li(2)/2
  const std::uint64_t t[] = {y};
  const PrimeSums sums = prime_sums_at(t).front();
  const Float fy = Float(y);
  const BigReal liy = constants::li(fy, 30);
  const Float partial = Float(sums.reciprocal) - Float(sums.count) / fy - log(log(fy)) +
                        liy.value / fy + loglog2 - li2.value / 2;
  const Float tail = env::tail_integral_Rhat(fy);

  Check bracket;
  bracket.name = "identity route inside sieve route +- tail_integral_Rhat(y)";
  bracket.value = format_fixed(identity, 20);
  bracket.lower = format_fixed(partial - tail, 20);
  bracket.upper = format_fixed(partial + tail, 20);
  bracket.ratio = (abs(identity - partial) / tail).convert_to<double>();
  bracket.ok = partial - tail <= identity && identity <= partial + tail;
  r.checks.push_back(bracket);

  Check width;
  width.name = "bracket width 2 tail_integral_Rhat(y)";
  width.value = format_fixed(2 * tail, 20);
  width.ok = true;
  r.checks.push_back(width);
  finalize(r);
  return r;
}

VerificationReport thresholds_check()
{
  const auto& c = scan_constants().exact;
  PrecisionScope scope(50);
  VerificationReport r = spot_report(ClaimId::THRESHOLDS, 0, 0);
  const auto window = [&](std::string name, const Float& v, const char* lo, const char* hi) {
    Check check;
    check.name = std::move(name);
    check.value = format_fixed(v, 6);
    check.lower = lo;
    check.upper = hi;
    check.ok = Float(lo) <= v && v <= Float(hi);
    r.checks.push_back(std::move(check));
  };
  window("exp(1.133/(M - alpha0))", exp(Float("1.133") / (c.M.value - c.alpha0.value)),
         "102841.55", "102841.57");
  window("exp(1/sqrt(2(beta0 - M)))", exp(1 / sqrt(2 * (c.beta0.value - c.M.value))), "2.47",
         "2.49");
  window("exp(1.175/(M' - alpha1))", exp(Float("1.175") / (c.M_prime.value - c.alpha1.value)),
         "8.22", "8.24");

  const Float x0 = Float(1400387903260ULL);
  const Float bound = exp(12 / (1 - c.gamma.value));
  Check exceeds;
  exceeds.name = "x0 > exp(12/(1 - gamma))";
  exceeds.value = format_fixed(x0, 0);
  exceeds.lower = format_fixed(bound, 3);
  exceeds.ok = x0 > bound;
  r.checks.push_back(exceeds);

  const Float lx = log(x0);
  const Float ehat = env::envelope_Ehat_omega(x0, 1);
  const Float cap = 11 * x0 / (lx * lx);
  Check rh;
  rh.name = "Ehat_omega(x0, 1) < 11 x0/log^2 x0";
  rh.value = format_fixed(ehat, 3);
  rh.upper = format_fixed(cap, 3);
  rh.ratio = (ehat / cap).convert_to<double>();
  rh.ok = ehat < cap;
  r.checks.push_back(rh);
  finalize(r);
  return r;
}

VerificationReport h_crossing_check()
{
  PrecisionScope scope(30);
  VerificationReport r = spot_report(ClaimId::H_CROSSING, 24, 200);
  const Float z_hi = Float("119.02511");
  const Float z_lo = Float("119.02510");
  const Float h_hi = env::h_corollary(z_hi);
  const Float h_lo = env::h_corollary(z_lo);

  Check below;
  below.name = "h(119.02511) < 1";
  below.value = format_fixed(h_hi, 25);
  below.upper = "1";
  below.ok = h_hi < 1;
  r.checks.push_back(below);

  Check above;
  above.name = "h(119.02510) > 1";
  above.value = format_fixed(h_lo, 25);
  above.lower = "1";
  above.ok = h_lo > 1;
  r.checks.push_back(above);

  // h decreases through the bracket, so bisection finds the crossing
  Float a = z_lo;
  Float b = z_hi;
  for (int i = 0; i < 60; ++i) {
    const Float mid = (a + b) / 2;
    (env::h_corollary(mid) > 1 ? a : b) = mid;
  }
  Check crossing;
  crossing.name = "crossing z with h(z) = 1";
  crossing.value = format_fixed((a + b) / 2, 15);
  crossing.lower = "119.02510";
  crossing.upper = "119.02511";
  crossing.ok = z_lo <= a && b <= z_hi && h_hi < 1 && h_lo > 1;
  r.checks.push_back(crossing);

  // grid z = 24 + k/100
  std::uint64_t rises = 0;
  Float prev = env::h_corollary(Float(24));
  for (int k = 1; k <= 17600; ++k) {
    const Float cur = env::h_corollary(Float(2400 + k) / 100);
    if (!(cur < prev))
      ++rises;
    prev = cur;
  }
  Check grid;
  grid.name = "non-decreasing steps of h on [24, 200] step 0.01";
  grid.value = std::to_string(rises);
  grid.upper = "0";
  grid.ok = rises == 0;
  r.checks.push_back(grid);

  // at x = e^14167: E_omega(x, 1) - 4x/log^2 x < x/log^2 x, i.e. h(sqrt(log x)) < 1
  const Float x = exp(Float(14167));
  const Float l2 = Float(14167) * 14167;
  const Float excess = (env::envelope_E_omega(x, 1) - 4 * x / l2) / (x / l2);
  Check sharp;
  sharp.name = "(E_omega(x,1) - 4x/log^2 x)/(x/log^2 x) at x = e^14167";
  sharp.value = format_fixed(excess, 25);
  sharp.upper = "1";
  sharp.ok = excess < 1;
  r.checks.push_back(sharp);

  Check same;
  const Float hz = env::h_corollary(sqrt(Float(14167)));
  same.name = "that ratio equals h(sqrt(14167))";
  same.value = format_fixed(abs(excess - hz), 25);
  same.upper = "1e-20";
  same.ok = abs(excess - hz) < Float("1e-20");
  r.checks.push_back(same);

  // (1 - gamma) x/log x > 5x/log^2 x, i.e. (1 - gamma) log x > 5, past log x = 5/(1 - gamma)
  const Float gamma = scan_constants().exact.gamma.value;
  const Float start = 5 / (1 - gamma);
  std::uint64_t misses = 0;
  for (int k = 1; k <= 1000; ++k) {
    const Float lx = start + Float(k) / 1000;
    if (!((1 - gamma) / lx > 5 / (lx * lx)))
      ++misses;
  }
  Check gap;
  gap.name = "(1-gamma)/log x > 5/log^2 x on log x in (5/(1-gamma), 5/(1-gamma)+1]";
  gap.value = std::to_string(misses);
  gap.upper = "0";
  gap.ok = misses == 0;
  r.checks.push_back(gap);
  finalize(r);
  return r;
}

} // namespace omega::verifier
