#include <omega/sieve.hpp>

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace omega::sieve {

namespace {

struct BlockTotals {
  u128 sum_omega = 0;
  u128 sum_big_omega = 0;
};

BlockTotals totals_of(const OmegaBlock& block)
{
  std::uint64_t so = 0;
  std::uint64_t sb = 0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    so += block.omega[i];
    sb += block.big_omega[i];
  }
  return {so, sb};
}

void fold(const OmegaBlock& block, const BlockTotals& totals, Emit emit, PrefixState& state,
          const PrefixSink& sink)
{
  if (emit == Emit::per_integer && sink) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      state.n = block.lo + i;
      state.sum_omega += block.omega[i];
      state.sum_big_omega += block.big_omega[i];
      sink(state);
    }
    return;
  }
  state.n = block.hi - 1;
  state.sum_omega += totals.sum_omega;
  state.sum_big_omega += totals.sum_big_omega;
  if (emit == Emit::per_segment && sink)
    sink(state);
}

void check_options(const ScanOptions& options)
{
  if (options.segment_size == 0)
    throw std::invalid_argument("prefix_scan: segment_size must be positive");
  if (options.threads < 1)
    throw std::invalid_argument("prefix_scan: threads must be at least 1");
}

PrimeTable root_table(std::uint64_t x)
{
  return primes_up_to(std::max<std::uint64_t>(2, isqrt(x)));
}

} // namespace

std::vector<OmegaBlock> omega_blocks(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t segment_size, const PrimeTable& table,
                                     int threads)
{
  if (lo >= hi)
    return {};
  const std::uint64_t count = (hi - lo + segment_size - 1) / segment_size;
  std::vector<OmegaBlock> blocks(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t s = 0; s < n; ++s) {
    const std::uint64_t a = lo + static_cast<std::uint64_t>(s) * segment_size;
    const std::uint64_t b = std::min(hi, a + segment_size);
    blocks[static_cast<std::size_t>(s)] = omega_block(a, b, table);
  }
  return blocks;
}

PrefixState prefix_scan(std::uint64_t x, const ScanOptions& options, const PrefixSink& sink)
{
  check_options(options);
  PrefixState state;
  if (x == 0)
    return state;
  const PrimeTable table = root_table(x);
  const std::uint64_t batch = options.segment_size * static_cast<std::uint64_t>(options.threads);

  for (std::uint64_t lo = 1; lo <= x;) {
    const std::uint64_t hi = (x - lo + 1 > batch) ? lo + batch : x + 1;
    const std::vector<OmegaBlock> blocks =
      omega_blocks(lo, hi, options.segment_size, table, options.threads);
    std::vector<BlockTotals> totals(blocks.size());
    const auto n = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(static) num_threads(options.threads)
    for (std::int64_t s = 0; s < n; ++s)
      totals[static_cast<std::size_t>(s)] = totals_of(blocks[static_cast<std::size_t>(s)]);
    // Ordered fold: states must reach the sink in ascending n.
    for (std::size_t s = 0; s < blocks.size(); ++s)
      fold(blocks[s], totals[s], options.emit, state, sink);
    lo = hi;
  }
  return state;
}

std::vector<PrefixState> prefix_states_at(std::span<const std::uint64_t> targets,
                                          const ScanOptions& options)
{
  check_options(options);
  std::vector<std::size_t> order(targets.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });
  std::vector<PrefixState> out(targets.size());
  std::size_t next = 0;
  // target 0 is the empty sum
  while (next < order.size() && targets[order[next]] == 0)
    ++next;
  if (next == order.size())
    return out;

  const std::uint64_t x = targets[order.back()];
  const PrimeTable table = root_table(x);
  const std::uint64_t batch = options.segment_size * static_cast<std::uint64_t>(options.threads);
  PrefixState state;
  for (std::uint64_t lo = 1; lo <= x;) {
    const std::uint64_t hi = (x - lo + 1 > batch) ? lo + batch : x + 1;
    const std::vector<OmegaBlock> blocks =
      omega_blocks(lo, hi, options.segment_size, table, options.threads);
    for (const OmegaBlock& block : blocks) {
      // integers of this block up to each target inside it
      PrefixState partial = state;
      std::uint64_t k = block.lo;
      while (next < order.size() && targets[order[next]] < block.hi) {
        const std::uint64_t t = targets[order[next]];
        for (; k <= t; ++k) {
          partial.sum_omega += block.omega[k - block.lo];
          partial.sum_big_omega += block.big_omega[k - block.lo];
        }
        partial.n = t;
        out[order[next]] = partial;
        ++next;
      }
      fold(block, totals_of(block), Emit::none, state, {});
    }
    lo = hi;
  }
  return out;
}

namespace serial {

PrefixState prefix_scan(std::uint64_t x, const ScanOptions& options, const PrefixSink& sink)
{
  check_options(options);
  PrefixState state;
  if (x == 0)
    return state;
  const PrimeTable table = root_table(x);
  for (std::uint64_t lo = 1; lo <= x;) {
    const std::uint64_t hi = (x - lo + 1 > options.segment_size) ? lo + options.segment_size : x + 1;
    const OmegaBlock block = serial::omega_block(lo, hi, table);
    fold(block, totals_of(block), options.emit, state, sink);
    lo = hi;
  }
  return state;
}

} // namespace serial

} // namespace omega::sieve
