#pragma once

#include <omega/constants.hpp>
#include <omega/int128.hpp>
#include <omega/sieve.hpp>

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace omega::verifier {

enum class ClaimId {
  THM_2_1_LOWER,  // alpha0 <= A0(n)
  THM_2_1_UPPER,  // A0(n) <= beta0
  THM_2_2,        // alpha1 <= A1(n)
  A1_LT_BETA1,    // A1(n) < M'
  A0_LT_M,        // A0(n) < M for n >= 16, fails at 15
  J_BOUNDS,       // n M'' - 25 sqrt(n)/log n < J(n) < n M'' - (sqrt(n)/log n)(2 - 20/log n)
  ENVELOPE_M1,    // |S(x) - main term| <= E(x, m), all four envelopes
  MERTENS_SUM,    // |sum_{p<=y} 1/p - log log y - M| <= (3 log y + 4)/sqrt(y)
  KAPPA_33,       // kappa(n) + M'' < 33 sqrt(n)/log n
  INEQ_33X,       // 33 sqrt(x)/log x < x/log^2 x from 155652 on
  THRESHOLDS,     // the numeric thresholds used to close the global bounds
  PI_LI_INTEGRAL, // int_2^inf (pi(t) - li(t))/t^2 dt = M + log log 2 - li(2)/2
  H_CROSSING,     // h(z) < 1 past z = 119.02511, h decreasing from 24 on
};

std::string to_string(ClaimId claim);
// Throws std::invalid_argument for unknown names.
ClaimId parse_claim(const std::string& name);
// The claims checked by scanning every n of a range; the rest are spot checks.
bool is_range_claim(ClaimId claim);

enum class Status { pass, fail, partial };

std::string to_string(Status status);

struct Extremum {
  double slack = 0;
  std::uint64_t n = 0;

  friend bool operator==(const Extremum&, const Extremum&) = default;
};

// (n, S): the scanned sum at n equals S, and the bound constant is S/n - log log n.
struct Witness {
  std::uint64_t n = 0;
  u128 sum = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Violation {
  std::uint64_t n = 0;
  double slack = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// A single numeric comparison of a spot check: lower <= value <= upper, with
// either side optional. Values are decimal strings so BigReal digits survive.
struct Check {
  std::string name;
  std::string value;
  std::string lower;
  std::string upper;
  std::optional<double> ratio;
  bool ok = false;

  friend bool operator==(const Check&, const Check&) = default;
};

inline constexpr std::size_t max_listed_violations = 1000;

struct VerificationReport {
  ClaimId claim = ClaimId::THM_2_1_LOWER;
  std::uint64_t n_start = 0;
  std::uint64_t n_end = 0;
  std::optional<Extremum> min_slack;
  std::optional<Extremum> max_slack;
  std::vector<Witness> witnesses;
  std::vector<Violation> violations; // the first max_listed_violations by n
  std::uint64_t violation_count = 0;
  std::vector<Check> checks;
  std::uint64_t checkpoint = 0; // last fully processed n
  Status status = Status::partial;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Thrown when a checkpoint file belongs to a different scan.
class CheckpointMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  std::uint64_t shard_size = std::uint64_t{1} << 24;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  int threads = 1;
  // JSON-lines file, one record per completed shard; resumed from when present.
  std::string checkpoint_path;
  // CSV rows "n,A0,A1,slack" at every power of two (slack of the first claim).
  std::ostream* samples = nullptr;
  // Polled between shards; a raised flag ends the scan as PARTIAL.
  const std::atomic<bool>* stop = nullptr;
  // Stop after this many shards in this call (0: run to the end).
  std::uint64_t stop_after_shards = 0;
};

// Double-precision bound constants plus the 50-digit set they came from, used
// to re-decide comparisons closer than 1e-9.
struct ScanConstants {
  double alpha0;
  double beta0;
  double alpha1;
  double M;
  double M_prime;
  double M_double_prime;
  constants::ConstantSet exact;
};

// Computed once per process.
const ScanConstants& scan_constants();

// Scans [n_start, n_end] (n_start >= 2) for all range claims at once, one
// report per claim in the given order.
std::vector<VerificationReport> scan(std::span<const ClaimId> claims, std::uint64_t n_start,
                                     std::uint64_t n_end, const ScanOptions& options = {});

std::vector<VerificationReport> scan_theorem_2_1(std::uint64_t n_start, std::uint64_t n_end,
                                                 const ScanOptions& options = {});
VerificationReport scan_theorem_2_2(std::uint64_t n_start, std::uint64_t n_end,
                                    const ScanOptions& options = {});
VerificationReport scan_A1_upper(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options = {});
VerificationReport scan_A0_upper_M(std::uint64_t n_start, std::uint64_t n_end,
                                   const ScanOptions& options = {});
VerificationReport scan_J_bounds(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options = {});
VerificationReport scan_kappa_33(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options = {});

namespace serial {

// Reference scan: one integer at a time from a serial prefix stream, no
// shards, no checkpoints. Produces the same reports as verifier::scan.
std::vector<VerificationReport> scan(std::span<const ClaimId> claims, std::uint64_t n_start,
                                     std::uint64_t n_end);

} // namespace serial

// --- spot checks --------------------------------------------------------------

// D = |S(x) - main term| against E and E^ for omega and Omega, at every x and m.
VerificationReport check_main_term(std::span<const std::uint64_t> xs, std::span<const int> ms,
                                   int threads = 1);

VerificationReport mertens_sum_check(std::span<const std::uint64_t> ys);

VerificationReport ineq_33x_crossing();

// Identity route against the sieve route over t <= y with the RH tail bracket.
VerificationReport pi_li_integral_check(std::uint64_t y = 100000000);

VerificationReport thresholds_check();

VerificationReport h_crossing_check();

// sum_{p<=y} 1/p with compensated summation.
long double prime_reciprocal_sum(std::uint64_t y);

// --- reports ------------------------------------------------------------------

// Sets status from checkpoint, violations and checks.
void finalize(VerificationReport& report);

// Merges reports of one claim over adjacent ranges into the report of the
// union. Throws std::invalid_argument if claims differ or ranges do not tile.
VerificationReport merge_reports(std::span<const VerificationReport> parts);

std::string to_json(const VerificationReport& report);
std::string to_json(std::span<const VerificationReport> reports);
// Accepts one report object or an array of them.
std::vector<VerificationReport> reports_from_json(const std::string& text);

} // namespace omega::verifier
