// Serial reference kernels against their OpenMP counterparts.
// Thread count comes from the second benchmark argument.

#include <omega/sieve.hpp>
#include <omega/verifier.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace omega;

namespace {

constexpr std::uint64_t block_lo = 1000000000000;
constexpr std::uint64_t block_len = std::uint64_t{1} << 20;

const sieve::PrimeTable& block_table()
{
  static const sieve::PrimeTable table =
    sieve::primes_up_to(static_cast<std::uint64_t>(std::sqrt(double(block_lo + 8 * block_len))) + 1);
  return table;
}

void BM_prefix_scan_serial(benchmark::State& state)
{
  sieve::ScanOptions o;
  o.emit = sieve::Emit::none;
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sieve::serial::prefix_scan(x, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x));
}

void BM_prefix_scan_parallel(benchmark::State& state)
{
  sieve::ScanOptions o;
  o.emit = sieve::Emit::none;
  o.threads = static_cast<int>(state.range(1));
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sieve::prefix_scan(x, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x));
}

void BM_omega_block_serial(benchmark::State& state)
{
  const sieve::PrimeTable& table = block_table();
  for (auto _ : state)
    for (std::uint64_t k = 0; k < 8; ++k)
      benchmark::DoNotOptimize(
        sieve::serial::omega_block(block_lo + k * block_len, block_lo + (k + 1) * block_len, table));
  state.SetItemsProcessed(state.iterations() * 8 * static_cast<std::int64_t>(block_len));
}

void BM_omega_blocks_parallel(benchmark::State& state)
{
  const sieve::PrimeTable& table = block_table();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
      sieve::omega_blocks(block_lo, block_lo + 8 * block_len, block_len, table, threads));
  state.SetItemsProcessed(state.iterations() * 8 * static_cast<std::int64_t>(block_len));
}

const verifier::ClaimId all_range_claims[] = {
  verifier::ClaimId::THM_2_1_LOWER, verifier::ClaimId::THM_2_1_UPPER, verifier::ClaimId::THM_2_2,
  verifier::ClaimId::A1_LT_BETA1,   verifier::ClaimId::A0_LT_M,       verifier::ClaimId::J_BOUNDS,
  verifier::ClaimId::KAPPA_33};

void BM_verify_serial(benchmark::State& state)
{
  verifier::scan_constants();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(verifier::serial::scan(all_range_claims, 2, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_verify_parallel(benchmark::State& state)
{
  verifier::scan_constants();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  verifier::ScanOptions o;
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(verifier::scan(all_range_claims, 2, n, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

} // namespace

BENCHMARK(BM_prefix_scan_serial)->Arg(10000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_prefix_scan_parallel)->Args({10000000, 1})->Args({10000000, 2})->Args({10000000, 4})
  ->Args({10000000, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_omega_block_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_omega_blocks_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)
  ->UseRealTime();
BENCHMARK(BM_verify_serial)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Args({1000000, 1})->Args({1000000, 4})->Unit(benchmark::kMillisecond)
  ->UseRealTime();

BENCHMARK_MAIN();
