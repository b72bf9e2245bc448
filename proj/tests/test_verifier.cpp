#include <omega/envelopes.hpp>
#include <omega/verifier.hpp>

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

using namespace omega;
using namespace omega::verifier;

namespace {

const Check* find_check(const VerificationReport& r, const std::string& name)
{
  for (const Check& c : r.checks)
    if (c.name == name)
      return &c;
  return nullptr;
}

bool all_ok(const VerificationReport& r)
{
  for (const Check& c : r.checks)
    if (!c.ok)
      return false;
  return !r.checks.empty();
}

std::string temp_path(const std::string& stem)
{
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p = (dir / (stem + "_" + std::to_string(::getpid()) + ".jsonl")).string();
  std::filesystem::remove(p);
  return p;
}

const ClaimId all_range_claims[] = {ClaimId::THM_2_1_LOWER, ClaimId::THM_2_1_UPPER, ClaimId::THM_2_2,
                                    ClaimId::A1_LT_BETA1,   ClaimId::A0_LT_M,       ClaimId::J_BOUNDS,
                                    ClaimId::KAPPA_33};

} // namespace

TEST_CASE("claim names round-trip")
{
  for (int i = 0; i <= static_cast<int>(ClaimId::H_CROSSING); ++i) {
    const auto c = static_cast<ClaimId>(i);
    CHECK(parse_claim(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_claim("BOGUS"), std::invalid_argument);
  CHECK(is_range_claim(ClaimId::KAPPA_33));
  CHECK_FALSE(is_range_claim(ClaimId::THRESHOLDS));
}

TEST_CASE("lower and upper average bounds on [2, 10^5]")
{
  const std::vector<VerificationReport> r = scan_theorem_2_1(2, 100000);
  REQUIRE(r.size() == 2);
  const VerificationReport& lower = r[0];
  const VerificationReport& upper = r[1];
  CHECK(lower.claim == ClaimId::THM_2_1_LOWER);
  CHECK(lower.status == Status::pass);
  CHECK(lower.violation_count == 0);
  REQUIRE(lower.min_slack);
  CHECK(lower.min_slack->n == 32);
  CHECK(lower.min_slack->slack == 0);
  CHECK(lower.witnesses == std::vector<Witness>{{32, 45}});
  CHECK(upper.status == Status::pass);
  REQUIRE(upper.min_slack);
  CHECK(upper.min_slack->n == 2);
  CHECK(upper.min_slack->slack == 0);
  CHECK(upper.witnesses == std::vector<Witness>{{2, 1}});
  REQUIRE(find_check(lower, "witness sum at n=32"));
  CHECK(find_check(lower, "witness sum at n=32")->ok);
}

TEST_CASE("the upper constant is attained at n = 2")
{
  const std::vector<VerificationReport> r = scan_theorem_2_1(2, 2);
  CHECK(r[1].min_slack->slack == 0);
  CHECK(r[1].max_slack->slack == 0);
  CHECK(r[1].witnesses == std::vector<Witness>{{2, 1}});
}

TEST_CASE("lower bound for Omega on [2, 10^5]: unique witness at 7")
{
  const VerificationReport r = scan_theorem_2_2(2, 100000);
  CHECK(r.status == Status::pass);
  CHECK(r.violation_count == 0);
  CHECK(r.witnesses == std::vector<Witness>{{7, 8}});
  CHECK(r.min_slack->n == 7);
  CHECK(r.min_slack->slack == 0);
}

TEST_CASE("A1 stays below M' on [2, 10^5]")
{
  const VerificationReport r = scan_A1_upper(2, 100000);
  CHECK(r.status == Status::pass);
  CHECK(r.violation_count == 0);
  CHECK(r.min_slack->slack > 0);
  // at n = 2: A1(2) = 1/2 - log log 2
  const VerificationReport two = scan_A1_upper(2, 2);
  const double expected = scan_constants().M_prime - (0.5 - std::log(std::log(2.0)));
  CHECK(two.min_slack->slack == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("A1 slack minimum shrinks along dyadic ranges")
{
  double prev = 1e9;
  for (std::uint64_t hi = 1 << 10; hi <= (1 << 18); hi <<= 2) {
    const VerificationReport r = scan_A1_upper(2, hi);
    CHECK(r.min_slack->slack > 0);
    CHECK(r.min_slack->slack <= prev);
    prev = r.min_slack->slack;
  }
}

TEST_CASE("A0 < M from 16 on, fails at 15")
{
  const VerificationReport r = scan_A0_upper_M(2, 100000);
  CHECK(r.status == Status::pass);
  CHECK(r.violation_count == 0);
  const Check* at15 = find_check(r, "A0(15) - M");
  REQUIRE(at15);
  CHECK(at15->ok);
  CHECK(std::stod(at15->value) == doctest::Approx(19.0 / 15 - std::log(std::log(15.0)) -
                                                  scan_constants().M)
                                     .epsilon(1e-12));
  const VerificationReport sixteen = scan_A0_upper_M(16, 16);
  CHECK(sixteen.min_slack->slack > 0);
  CHECK(sixteen.checks.empty());
}

TEST_CASE("J bounds on [2, 10^5] and the n = 10 value")
{
  const VerificationReport r = scan_J_bounds(2, 100000);
  CHECK(r.status == Status::pass);
  CHECK(r.violation_count == 0);
  const VerificationReport ten = scan_J_bounds(10, 10);
  const double m2 = scan_constants().M_double_prime;
  const double s = std::sqrt(10.0) / std::log(10.0);
  const double lower = 10 * m2 - 25 * s;
  const double upper = 10 * m2 - s * (2 - 20 / std::log(10.0));
  CHECK(lower < 4);
  CHECK(4 < upper);
  CHECK(ten.min_slack->slack == doctest::Approx(std::min(4 - lower, upper - 4)).epsilon(1e-12));
  CHECK_THROWS_AS(scan_J_bounds(1, 10), std::invalid_argument);
}

TEST_CASE("kappa + M'' below 33 sqrt(n)/log n on [2, 10^5]")
{
  const VerificationReport r = scan_kappa_33(2, 100000);
  CHECK(r.status == Status::pass);
  CHECK(r.violation_count == 0);
  CHECK(r.min_slack->slack > 0);
}

TEST_CASE("scan argument checks")
{
  const ClaimId spot[] = {ClaimId::THRESHOLDS};
  CHECK_THROWS_AS(scan(spot, 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(scan(std::span<const ClaimId>(), 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(scan(all_range_claims, 10, 9), std::invalid_argument);
  ScanOptions bad;
  bad.threads = 0;
  CHECK_THROWS_AS(scan(all_range_claims, 2, 10, bad), std::invalid_argument);
}

TEST_CASE("reports do not depend on threads, shard or segment size")
{
  ScanOptions base;
  base.shard_size = 1 << 16;
  base.segment_size = 1 << 12;
  const std::string reference = to_json(scan(all_range_claims, 2, 300000, base));
  for (int threads : {2, 4, 8})
    for (std::uint64_t segment : {std::uint64_t{977}, std::uint64_t{1} << 14}) {
      ScanOptions o = base;
      o.threads = threads;
      o.segment_size = segment;
      CHECK(to_json(scan(all_range_claims, 2, 300000, o)) == reference);
    }
  ScanOptions big;
  big.shard_size = 1 << 20;
  CHECK(to_json(scan(all_range_claims, 2, 300000, big)) == reference);
}

TEST_CASE("serial reference scan agrees with the parallel scan")
{
  ScanOptions o;
  o.threads = 4;
  o.shard_size = 40000;
  o.segment_size = 5000;
  CHECK(to_json(serial::scan(all_range_claims, 2, 100000)) ==
        to_json(scan(all_range_claims, 2, 100000, o)));
  CHECK(to_json(serial::scan(all_range_claims, 5000, 60000)) ==
        to_json(scan(all_range_claims, 5000, 60000, o)));
}

TEST_CASE("an interrupted scan resumes to the uninterrupted report")
{
  ScanOptions o;
  o.shard_size = 25000;
  o.segment_size = 4096;
  o.threads = 3;
  const std::string whole = to_json(scan(all_range_claims, 2, 200000, o));

  o.checkpoint_path = temp_path("omega_resume");
  o.stop_after_shards = 3;
  const std::vector<VerificationReport> part = scan(all_range_claims, 2, 200000, o);
  for (const VerificationReport& r : part) {
    CHECK(r.status == Status::partial);
    CHECK(r.checkpoint == 75001);
  }
  o.stop_after_shards = 2;
  const std::vector<VerificationReport> more = scan(all_range_claims, 2, 200000, o);
  CHECK(more[0].checkpoint == 125001);
  o.stop_after_shards = 0;
  CHECK(to_json(scan(all_range_claims, 2, 200000, o)) == whole);
  // a finished checkpoint replays as complete
  CHECK(to_json(scan(all_range_claims, 2, 200000, o)) == whole);

  ScanOptions other = o;
  CHECK_THROWS_AS(scan(all_range_claims, 2, 300000, other), CheckpointMismatch);
  other.shard_size = 1000;
  CHECK_THROWS_AS(scan(all_range_claims, 2, 200000, other), CheckpointMismatch);
  const ClaimId fewer[] = {ClaimId::THM_2_2};
  CHECK_THROWS_AS(scan(fewer, 2, 200000, o), CheckpointMismatch);
  std::filesystem::remove(o.checkpoint_path);
}

TEST_CASE("a raised stop flag ends the scan as partial")
{
  std::atomic<bool> stop{true};
  ScanOptions o;
  o.stop = &stop;
  const VerificationReport r = scan_theorem_2_2(2, 1000, o);
  CHECK(r.status == Status::partial);
  CHECK(r.checkpoint < r.n_end);
}

TEST_CASE("merging split ranges equals the single-range report")
{
  ScanOptions o;
  o.shard_size = 1 << 14;
  const std::vector<VerificationReport> whole = scan(all_range_claims, 2, 100000, o);
  const std::vector<VerificationReport> left = scan(all_range_claims, 2, 31000, o);
  const std::vector<VerificationReport> mid = scan(all_range_claims, 31001, 64000, o);
  const std::vector<VerificationReport> right = scan(all_range_claims, 64001, 100000, o);
  for (std::size_t c = 0; c < whole.size(); ++c) {
    // order of parts does not matter
    const VerificationReport parts[] = {right[c], left[c], mid[c]};
    CHECK(to_json(merge_reports(parts)) == to_json(whole[c]));
  }
  const VerificationReport gap[] = {left[0], right[0]};
  CHECK_THROWS_AS(merge_reports(gap), std::invalid_argument);
  const VerificationReport mixed[] = {left[0], mid[1]};
  CHECK_THROWS_AS(merge_reports(mixed), std::invalid_argument);
  CHECK_THROWS_AS(merge_reports(std::span<const VerificationReport>()), std::invalid_argument);
}

TEST_CASE("merging keeps the checkpoint behind the first incomplete part")
{
  VerificationReport a;
  a.claim = ClaimId::THM_2_2;
  a.n_start = 2;
  a.n_end = 10;
  a.checkpoint = 10;
  VerificationReport b = a;
  b.n_start = 11;
  b.n_end = 20;
  b.checkpoint = 15;
  VerificationReport c = a;
  c.n_start = 21;
  c.n_end = 30;
  c.checkpoint = 30;
  const VerificationReport parts[] = {a, b, c};
  const VerificationReport m = merge_reports(parts);
  CHECK(m.checkpoint == 15);
  CHECK(m.status == Status::partial);
}

TEST_CASE("violations: cap, count and ordering survive merging")
{
  VerificationReport a;
  a.claim = ClaimId::A1_LT_BETA1;
  a.n_start = 2;
  a.n_end = 1000;
  a.checkpoint = 1000;
  VerificationReport b = a;
  b.n_start = 1001;
  b.n_end = 2000;
  b.checkpoint = 2000;
  for (std::uint64_t n = 2; n <= 900; ++n)
    a.violations.push_back({n, -1.0 / static_cast<double>(n)});
  a.violation_count = a.violations.size();
  for (std::uint64_t n = 1001; n <= 1500; ++n)
    b.violations.push_back({n, -1e-3});
  b.violation_count = b.violations.size();
  a.min_slack = Extremum{-0.5, 2};
  b.min_slack = Extremum{-0.5, 1200};
  const VerificationReport parts[] = {b, a};
  const VerificationReport m = merge_reports(parts);
  CHECK(m.status == Status::fail);
  CHECK(m.violation_count == 899 + 500);
  REQUIRE(m.violations.size() == max_listed_violations);
  CHECK(m.violations.front().n == 2);
  CHECK(m.violations.back().n == 1101);
  // ties go to the smaller n
  CHECK(m.min_slack->n == 2);
}

TEST_CASE("finalize")
{
  VerificationReport r;
  r.n_end = 10;
  r.checkpoint = 10;
  finalize(r);
  CHECK(r.status == Status::pass);
  r.checkpoint = 9;
  finalize(r);
  CHECK(r.status == Status::partial);
  r.checks.push_back({"x", "1", "", "0", std::nullopt, false});
  finalize(r);
  CHECK(r.status == Status::fail);
}

TEST_CASE("JSON round trip keeps exact integers")
{
  std::vector<VerificationReport> reports = scan_theorem_2_1(2, 5000);
  reports[0].witnesses.push_back({18446744073709551615ULL, (u128{1} << 100) + 3});
  reports[0].violations.push_back({99, -1e-300});
  reports[0].checks.push_back({"c", "0.1", "", "1", 0.25, true});
  const std::string text = to_json(std::span<const VerificationReport>(reports));
  CHECK(text.find("\"1267650600228229401496703205379\"") != std::string::npos);
  CHECK(reports_from_json(text) == reports);
  CHECK(reports_from_json(to_json(reports[1])) == std::vector<VerificationReport>{reports[1]});
  CHECK_THROWS(reports_from_json("{\"claim_id\": \"NOPE\"}"));
}

TEST_CASE("sample rows at powers of two")
{
  std::ostringstream rows;
  ScanOptions o;
  o.samples = &rows;
  o.shard_size = 300;
  o.segment_size = 64;
  o.threads = 2;
  scan_theorem_2_2(2, 1024, o);
  std::istringstream in(rows.str());
  std::string line;
  std::vector<std::uint64_t> ns;
  while (std::getline(in, line))
    ns.push_back(std::stoull(line.substr(0, line.find(','))));
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 2; n <= 1024; n <<= 1)
    expected.push_back(n);
  CHECK(ns == expected);
  // row for n = 2: A0 = A1 = 1/2 - log log 2, slack = A1 - alpha1
  std::istringstream first(rows.str());
  std::getline(first, line);
  CHECK(line.rfind("2,", 0) == 0);
}

TEST_CASE("main-term containment at x = 10^6, m = 1..3")
{
  const std::uint64_t xs[] = {1000000};
  const int ms[] = {1, 2, 3};
  const VerificationReport r = check_main_term(xs, ms);
  CHECK(r.claim == ClaimId::ENVELOPE_M1);
  CHECK(r.checks.size() == 12);
  CHECK(all_ok(r));
  CHECK(r.status == Status::pass);
  for (const Check& c : r.checks) {
    REQUIRE(c.ratio);
    CHECK(*c.ratio > 0);
    CHECK(*c.ratio < 1);
  }
  const int bad_m[] = {0};
  CHECK_THROWS_AS(check_main_term(xs, bad_m), std::invalid_argument);
  const std::uint64_t bad_x[] = {2};
  CHECK_THROWS_AS(check_main_term(bad_x, ms), std::invalid_argument);
}

TEST_CASE("the m = 1 main term carries -(1 - gamma) x/log x")
{
  const auto& k = scan_constants().exact;
  const double a1 = k.a[0].to_double();
  CHECK(a1 == doctest::Approx(k.gamma.to_double() - 1).epsilon(1e-15));
}

TEST_CASE("prime reciprocal sums and the Mertens containment")
{
  CHECK(prime_reciprocal_sum(2) == doctest::Approx(0.5L).epsilon(1e-18));
  CHECK(prime_reciprocal_sum(10) == doctest::Approx(1.0L / 2 + 1.0L / 3 + 1.0L / 5 + 1.0L / 7).epsilon(1e-18));
  const std::uint64_t ys[] = {2, 1000, 1000000};
  const VerificationReport r = mertens_sum_check(ys);
  CHECK(r.checks.size() == 3);
  CHECK(all_ok(r));
  const Check* two = find_check(r, "y=2");
  REQUIRE(two);
  CHECK(std::stod(two->upper) == doctest::Approx((3 * std::log(2.0) + 4) / std::sqrt(2.0)).epsilon(1e-12));
  const std::uint64_t bad[] = {1};
  CHECK_THROWS_AS(mertens_sum_check(bad), std::invalid_argument);
}

TEST_CASE("33 sqrt(x)/log x crossing")
{
  const VerificationReport r = ineq_33x_crossing();
  CHECK(r.claim == ClaimId::INEQ_33X);
  CHECK(all_ok(r));
  const Check* first = find_check(r, "least integer with sqrt(x) > 33 log x");
  REQUIRE(first);
  CHECK(std::stoull(first->value) <= 155652);
  CHECK(std::sqrt(1e4) < 33 * std::log(1e4));
}

TEST_CASE("pi - li integral at y = 10^6")
{
  const VerificationReport r = pi_li_integral_check(1000000);
  CHECK(r.claim == ClaimId::PI_LI_INTEGRAL);
  CHECK(all_ok(r));
  const Check* rounded = find_check(r, "M + log log 2 - li(2)/2 to 17 decimals");
  REQUIRE(rounded);
  CHECK(rounded->value == "-0.62759759779276794");
}

TEST_CASE("thresholds: only the x0 comparison fails")
{
  const VerificationReport r = thresholds_check();
  CHECK(r.status == Status::fail);
  int failed = 0;
  for (const Check& c : r.checks)
    if (!c.ok) {
      ++failed;
      CHECK(c.name == "x0 > exp(12/(1 - gamma))");
    }
  CHECK(failed == 1);
  CHECK(r.checks.size() == 5);
  const Check* rh = find_check(r, "Ehat_omega(x0, 1) < 11 x0/log^2 x0");
  REQUIRE(rh);
  CHECK(rh->ok);
}

TEST_CASE("h crossing checks all hold")
{
  const VerificationReport r = h_crossing_check();
  CHECK(r.claim == ClaimId::H_CROSSING);
  CHECK(all_ok(r));
  CHECK(r.status == Status::pass);
}

TEST_CASE("scan constants match their exact set")
{
  const ScanConstants& k = scan_constants();
  CHECK(k.M == k.exact.M.to_double());
  CHECK(k.M_prime == k.exact.M_prime.to_double());
  CHECK(k.alpha0 == doctest::Approx(45.0 / 32 - std::log(std::log(32.0))).epsilon(1e-15));
  CHECK(k.beta0 == doctest::Approx(0.5 - std::log(std::log(2.0))).epsilon(1e-15));
  CHECK(k.alpha1 == doctest::Approx(8.0 / 7 - std::log(std::log(7.0))).epsilon(1e-15));
  CHECK(&scan_constants() == &k);
}
