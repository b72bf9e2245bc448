#pragma once

#include <omega/int128.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace omega::sieve {

// Primes in [2, limit], immutable once built. Shared read-only across threads.
class PrimeTable {
public:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  // pi(x) by binary search; x must not exceed limit().
  std::uint64_t count_up_to(std::uint64_t x) const;

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

struct SieveLimits {
  // Upper bound on the bytes a PrimeTable may occupy.
  std::size_t max_table_bytes = std::size_t{1} << 31;
};

PrimeTable primes_up_to(std::uint64_t limit, const SieveLimits& limits = {});

std::uint64_t prime_count(std::uint64_t x, const PrimeTable& table);

// Streams the primes of [2, limit] one sieve segment at a time, in ascending
// order, without materialising a table.
void for_each_prime_segment(std::uint64_t limit,
                            const std::function<void(std::span<const std::uint64_t>)>& visit);

struct OmegaBlock {
  std::uint64_t lo = 0; // inclusive
  std::uint64_t hi = 0; // exclusive
  std::vector<std::uint8_t> omega;
  std::vector<std::uint8_t> big_omega;

  std::size_t size() const { return omega.size(); }
};

// omega(k), Omega(k) for k in [lo, hi). The table has to reach sqrt(hi - 1).
OmegaBlock omega_block(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table);

struct FactorCounts {
  unsigned omega = 0;
  unsigned big_omega = 0;

  friend bool operator==(const FactorCounts&, const FactorCounts&) = default;
};

// Trial division; the independent oracle for omega_block.
FactorCounts factor_count_naive(std::uint64_t n);

struct PrefixState {
  std::uint64_t n = 0;
  u128 sum_omega = 0;
  u128 sum_big_omega = 0;

  friend bool operator==(const PrefixState&, const PrefixState&) = default;
};

// J(n) = sum_{k<=n} (Omega(k) - omega(k))
u128 j_diff(const PrefixState& state);

enum class Emit { none, per_segment, per_integer };

struct ScanOptions {
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  Emit emit = Emit::per_segment;
  int threads = 1;
};

using PrefixSink = std::function<void(const PrefixState&)>;

// Exact prefix sums up to x. Segments are sieved in parallel batches and folded
// in ascending order, so the sink sees states in increasing n.
PrefixState prefix_scan(std::uint64_t x, const ScanOptions& options = {},
                        const PrefixSink& sink = {});

// Prefix states at each of the given targets (any order, duplicates allowed),
// from one pass up to the largest. Result i belongs to targets[i].
std::vector<PrefixState> prefix_states_at(std::span<const std::uint64_t> targets,
                                          const ScanOptions& options = {});

// Sieves segments of [lo, hi) in parallel; blocks come back in ascending order.
std::vector<OmegaBlock> omega_blocks(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t segment_size, const PrimeTable& table,
                                     int threads);

namespace serial {

// Reference kernels kept for testing and benchmarking: one segment at a time,
// no OpenMP.
PrefixState prefix_scan(std::uint64_t x, const ScanOptions& options = {},
                        const PrefixSink& sink = {});

// Division-based block kernel; slower than the multiplicative one above.
OmegaBlock omega_block(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table);

} // namespace serial

// Checkpoint records: (n, sum_omega, sum_big_omega) as 8 + 16 + 16 little-endian
// bytes, or one JSON object per line with the same fields as decimal strings.
inline constexpr std::size_t prefix_record_bytes = 40;

void write_prefix_binary(std::ostream& out, const PrefixState& state);
bool read_prefix_binary(std::istream& in, PrefixState& state);
void write_prefix_jsonl(std::ostream& out, const PrefixState& state);
PrefixState parse_prefix_jsonl(const std::string& line);

} // namespace omega::sieve
