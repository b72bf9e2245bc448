#include <omega/verifier.hpp>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace omega::verifier {

namespace {

using json = nlohmann::ordered_json;
using sieve::OmegaBlock;
using sieve::PrefixState;

// Doubles closer to the bound than this are re-decided at 40+ digits.
constexpr double tie_band = 1e-9;
constexpr int exact_digits = 40;

struct WitnessPair {
  std::uint64_t n;
  u128 sum;
  bool big_omega; // the pair refers to the Omega sum
};

std::optional<WitnessPair> witness_for(ClaimId claim)
{
  switch (claim) {
  case ClaimId::THM_2_1_LOWER:
    return WitnessPair{32, 45, false};
  case ClaimId::THM_2_1_UPPER:
    return WitnessPair{2, 1, false};
  case ClaimId::THM_2_2:
    return WitnessPair{7, 8, true};
  default:
    return std::nullopt;
  }
}

bool strict(ClaimId claim)
{
  return claim == ClaimId::A1_LT_BETA1 || claim == ClaimId::A0_LT_M ||
         claim == ClaimId::J_BOUNDS || claim == ClaimId::KAPPA_33;
}

// the A0 < M claim is stated for n >= 16; n = 15 is its recorded exception
constexpr std::uint64_t a0_lt_m_from = 16;
constexpr std::uint64_t a0_lt_m_exception = 15;

double double_slack(ClaimId claim, const PrefixState& s, double loglog, const ScanConstants& k)
{
  const double n = static_cast<double>(s.n);
  switch (claim) {
  case ClaimId::THM_2_1_LOWER:
    return (to_double(s.sum_omega) / n - loglog) - k.alpha0;
  case ClaimId::THM_2_1_UPPER:
    return k.beta0 - (to_double(s.sum_omega) / n - loglog);
  case ClaimId::THM_2_2:
    return (to_double(s.sum_big_omega) / n - loglog) - k.alpha1;
  case ClaimId::A1_LT_BETA1:
    return k.M_prime - (to_double(s.sum_big_omega) / n - loglog);
  case ClaimId::A0_LT_M:
    return k.M - (to_double(s.sum_omega) / n - loglog);
  case ClaimId::J_BOUNDS: {
    const double j = to_double(sieve::j_diff(s));
    const double ln = std::log(n);
    const double r = std::sqrt(n) / ln;
    const double lower = n * k.M_double_prime - 25 * r;
    const double upper = n * k.M_double_prime - r * (2 - 20 / ln);
    return std::min(j - lower, upper - j);
  }
  case ClaimId::KAPPA_33:
    // kappa(n) = 25 sqrt(n)/log n at integers
    return 8 * std::sqrt(n) / std::log(n) - k.M_double_prime;
  default:
    throw std::invalid_argument("not a range claim: " + to_string(claim));
  }
}

Float exact_slack(ClaimId claim, const PrefixState& s, const ScanConstants& k)
{
  PrecisionScope scope(exact_digits + 10);
  const auto& c = k.exact;
  const auto a0 = [&] { return constants::average_minus_loglog(s.sum_omega, s.n, exact_digits).value; };
  const auto a1 = [&] {
    return constants::average_minus_loglog(s.sum_big_omega, s.n, exact_digits).value;
  };
  const Float n = Float(s.n);
  switch (claim) {
  case ClaimId::THM_2_1_LOWER:
    return a0() - c.alpha0.value;
  case ClaimId::THM_2_1_UPPER:
    return c.beta0.value - a0();
  case ClaimId::THM_2_2:
    return a1() - c.alpha1.value;
  case ClaimId::A1_LT_BETA1:
    return c.M_prime.value - a1();
  case ClaimId::A0_LT_M:
    return c.M.value - a0();
  case ClaimId::J_BOUNDS: {
    const Float j = Float(omega::to_string(sieve::j_diff(s)));
    const Float ln = log(n);
    const Float r = sqrt(n) / ln;
    const Float lower = n * c.M_double_prime.value - 25 * r;
    const Float upper = n * c.M_double_prime.value - r * (2 - 20 / ln);
    const Float a = j - lower;
    const Float b = upper - j;
    return a < b ? a : b;
  }
  case ClaimId::KAPPA_33:
    return 8 * sqrt(n) / log(n) - c.M_double_prime.value;
  default:
    throw std::invalid_argument("not a range claim: " + to_string(claim));
  }
}

void record(VerificationReport& acc, std::uint64_t n, double slack, bool violated)
{
  // n arrives in ascending order, so strict comparisons keep the smaller n on ties
  if (!acc.min_slack || slack < acc.min_slack->slack)
    acc.min_slack = Extremum{slack, n};
  if (!acc.max_slack || slack > acc.max_slack->slack)
    acc.max_slack = Extremum{slack, n};
  if (violated) {
    if (acc.violations.size() < max_listed_violations)
      acc.violations.push_back({n, slack});
    ++acc.violation_count;
  }
}

void observe(VerificationReport& acc, const PrefixState& s, double loglog, const ScanConstants& k)
{
  const ClaimId claim = acc.claim;
  if (claim == ClaimId::A0_LT_M && s.n < a0_lt_m_from) {
    if (s.n == a0_lt_m_exception) {
      Float diff;
#pragma omp critical(omega_exact)
      diff = -exact_slack(claim, s, k);
      Check check;
      check.name = "A0(15) - M";
      check.value = format_fixed(diff, 20);
      check.lower = "0";
      check.ok = diff > 0;
      acc.checks.push_back(std::move(check));
    }
    return;
  }
  if (const auto w = witness_for(claim); w && s.n == w->n) {
    const u128 sum = w->big_omega ? s.sum_big_omega : s.sum_omega;
    Check check;
    check.name = "witness sum at n=" + std::to_string(w->n);
    check.value = omega::to_string(sum);
    check.lower = omega::to_string(w->sum);
    check.upper = omega::to_string(w->sum);
    check.ok = sum == w->sum;
    acc.checks.push_back(std::move(check));
    if (sum == w->sum) {
      // the bound constant is defined as this S/n - log log n: slack is exactly 0
      acc.witnesses.push_back({w->n, w->sum});
      record(acc, s.n, 0.0, false);
      return;
    }
  }
  double slack = double_slack(claim, s, loglog, k);
  bool violated;
  if (std::fabs(slack) < tie_band) {
    Float exact;
#pragma omp critical(omega_exact)
    exact = exact_slack(claim, s, k);
    slack = exact.convert_to<double>();
    violated = strict(claim) ? exact <= 0 : exact < 0;
  } else {
    violated = strict(claim) ? slack <= 0 : slack < 0;
  }
  record(acc, s.n, slack, violated);
}

// Appends a later accumulator; `from` covers strictly larger n than `into`.
void absorb(VerificationReport& into, const VerificationReport& from)
{
  if (from.min_slack && (!into.min_slack || from.min_slack->slack < into.min_slack->slack))
    into.min_slack = from.min_slack;
  if (from.max_slack && (!into.max_slack || from.max_slack->slack > into.max_slack->slack))
    into.max_slack = from.max_slack;
  into.witnesses.insert(into.witnesses.end(), from.witnesses.begin(), from.witnesses.end());
  for (const Violation& v : from.violations)
    if (into.violations.size() < max_listed_violations)
      into.violations.push_back(v);
  into.violation_count += from.violation_count;
  into.checks.insert(into.checks.end(), from.checks.begin(), from.checks.end());
}

std::string sample_row(const PrefixState& s, double loglog, double slack, bool has_slack)
{
  const double n = static_cast<double>(s.n);
  char buf[160];
  const double a0 = to_double(s.sum_omega) / n - loglog;
  const double a1 = to_double(s.sum_big_omega) / n - loglog;
  if (has_slack)
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(s.n),
                  a0, a1, slack);
  else
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,\n", static_cast<unsigned long long>(s.n), a0,
                  a1);
  return buf;
}

bool power_of_two(std::uint64_t n)
{
  return n != 0 && (n & (n - 1)) == 0;
}

struct Evaluator {
  std::span<const ClaimId> claims;
  const ScanConstants& k;
  bool samples;

  // Integers of one block starting after `state`; reports get one accumulator
  // per claim, rows the sample lines.
  void run(const OmegaBlock& block, PrefixState state, std::vector<VerificationReport>& acc,
           std::string& rows) const
  {
    for (std::size_t i = 0; i < block.size(); ++i) {
      state.n = block.lo + i;
      state.sum_omega += block.omega[i];
      state.sum_big_omega += block.big_omega[i];
      const double loglog = std::log(std::log(static_cast<double>(state.n)));
      for (VerificationReport& r : acc)
        observe(r, state, loglog, k);
      if (samples && power_of_two(state.n)) {
        const ClaimId first = claims.front();
        const bool has = !(first == ClaimId::A0_LT_M && state.n < a0_lt_m_from);
        rows += sample_row(state, loglog, has ? double_slack(first, state, loglog, k) : 0.0, has);
      }
    }
  }
};

std::vector<VerificationReport> empty_reports(std::span<const ClaimId> claims, std::uint64_t n_start,
                                              std::uint64_t n_end)
{
  std::vector<VerificationReport> reports;
  for (ClaimId c : claims) {
    VerificationReport r;
    r.claim = c;
    r.n_start = n_start;
    r.n_end = n_end;
    r.checkpoint = n_start - 1;
    reports.push_back(std::move(r));
  }
  return reports;
}

void check_request(std::span<const ClaimId> claims, std::uint64_t n_start, std::uint64_t n_end)
{
  if (claims.empty())
    throw std::invalid_argument("scan: no claims given");
  for (ClaimId c : claims)
    if (!is_range_claim(c))
      throw std::invalid_argument("scan: " + to_string(c) + " is not a range claim");
  if (n_start < 2)
    throw std::invalid_argument("scan: n_start must be at least 2");
  if (n_end < n_start)
    throw std::invalid_argument("scan: empty range");
}

json claims_json(std::span<const ClaimId> claims)
{
  json arr = json::array();
  for (ClaimId c : claims)
    arr.push_back(to_string(c));
  return arr;
}

json state_json(const PrefixState& s)
{
  return json{{"n", std::to_string(s.n)},
              {"sum_omega", omega::to_string(s.sum_omega)},
              {"sum_big_omega", omega::to_string(s.sum_big_omega)}};
}

struct Resume {
  PrefixState state;
  std::vector<VerificationReport> reports;
};

std::optional<Resume> read_checkpoint(const std::string& path, std::span<const ClaimId> claims,
                                      std::uint64_t n_start, std::uint64_t n_end,
                                      std::uint64_t shard_size)
{
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  std::string line;
  std::string last;
  while (std::getline(in, line))
    if (!line.empty())
      last = line;
  if (last.empty())
    return std::nullopt;
  json record;
  try {
    record = json::parse(last);
  } catch (const json::exception& e) {
    throw CheckpointMismatch("checkpoint " + path + ": unreadable record: " + e.what());
  }
  if (record.at("claims") != claims_json(claims) ||
      record.at("n_start").get<std::string>() != std::to_string(n_start) ||
      record.at("n_end").get<std::string>() != std::to_string(n_end) ||
      record.at("shard_size").get<std::string>() != std::to_string(shard_size))
    throw CheckpointMismatch("checkpoint " + path + " belongs to a different scan");
  Resume r;
  const json& s = record.at("state");
  r.state.n = std::stoull(s.at("n").get<std::string>());
  r.state.sum_omega = parse_u128(s.at("sum_omega").get<std::string>());
  r.state.sum_big_omega = parse_u128(s.at("sum_big_omega").get<std::string>());
  r.reports = reports_from_json(record.at("reports").dump());
  if (r.reports.size() != claims.size())
    throw CheckpointMismatch("checkpoint " + path + ": report count does not match");
  return r;
}

void write_checkpoint(std::ofstream& out, std::span<const ClaimId> claims, std::uint64_t n_start,
                      std::uint64_t n_end, std::uint64_t shard_size, const PrefixState& state,
                      const std::vector<VerificationReport>& reports)
{
  json record{{"claims", claims_json(claims)},
              {"n_start", std::to_string(n_start)},
              {"n_end", std::to_string(n_end)},
              {"shard_size", std::to_string(shard_size)},
              {"shard_end", std::to_string(state.n)},
              {"state", state_json(state)},
              {"reports", json::parse(to_json(std::span<const VerificationReport>(reports)))}};
  out << record.dump() << '\n';
  out.flush();
}

} // namespace

const ScanConstants& scan_constants()
{
  static const ScanConstants k = [] {
    ScanConstants c{0, 0, 0, 0, 0, 0, constants::constant_set(50, 5)};
    c.alpha0 = c.exact.alpha0.to_double();
    c.beta0 = c.exact.beta0.to_double();
    c.alpha1 = c.exact.alpha1.to_double();
    c.M = c.exact.M.to_double();
    c.M_prime = c.exact.M_prime.to_double();
    c.M_double_prime = c.exact.M_double_prime.to_double();
    return c;
  }();
  return k;
}

std::vector<VerificationReport> scan(std::span<const ClaimId> claims, std::uint64_t n_start,
                                     std::uint64_t n_end, const ScanOptions& options)
{
  check_request(claims, n_start, n_end);
  if (options.shard_size == 0 || options.segment_size == 0)
    throw std::invalid_argument("scan: shard and segment sizes must be positive");
  if (options.threads < 1)
    throw std::invalid_argument("scan: threads must be at least 1");
  const ScanConstants& k = scan_constants();

  std::vector<VerificationReport> reports;
  PrefixState state;
  std::uint64_t next = n_start;
  std::optional<Resume> resumed;
  if (!options.checkpoint_path.empty())
    resumed = read_checkpoint(options.checkpoint_path, claims, n_start, n_end, options.shard_size);
  if (resumed) {
    state = resumed->state;
    reports = std::move(resumed->reports);
    next = state.n + 1;
  } else {
    reports = empty_reports(claims, n_start, n_end);
    sieve::ScanOptions pre{options.segment_size, sieve::Emit::none, options.threads};
    state = sieve::prefix_scan(n_start - 1, pre);
  }

  std::ofstream checkpoint;
  if (!options.checkpoint_path.empty()) {
    checkpoint.open(options.checkpoint_path, std::ios::app);
    if (!checkpoint)
      throw std::runtime_error("cannot open checkpoint file " + options.checkpoint_path);
  }

  const sieve::PrimeTable table = sieve::primes_up_to(std::max<std::uint64_t>(2, isqrt(n_end)));
  const Evaluator eval{claims, k, options.samples != nullptr};
  std::uint64_t shards = 0;
  while (next <= n_end) {
    if (options.stop && options.stop->load())
      break;
    if (options.stop_after_shards != 0 && shards == options.stop_after_shards)
      break;
    const std::uint64_t shard_end =
      (n_end - next >= options.shard_size) ? next + options.shard_size - 1 : n_end;
    const std::vector<OmegaBlock> blocks =
      sieve::omega_blocks(next, shard_end + 1, options.segment_size, table, options.threads);

    // prefix state entering each block: parallel totals, serial offsets
    std::vector<PrefixState> starts(blocks.size());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> totals(blocks.size());
    const auto count = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(static) num_threads(options.threads)
    for (std::int64_t b = 0; b < count; ++b) {
      const OmegaBlock& block = blocks[static_cast<std::size_t>(b)];
      std::uint64_t so = 0;
      std::uint64_t sb = 0;
      for (std::size_t i = 0; i < block.size(); ++i) {
        so += block.omega[i];
        sb += block.big_omega[i];
      }
      totals[static_cast<std::size_t>(b)] = {so, sb};
    }
    PrefixState running = state;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      starts[b] = running;
      running.n = blocks[b].hi - 1;
      running.sum_omega += totals[b].first;
      running.sum_big_omega += totals[b].second;
    }

    std::vector<std::vector<VerificationReport>> local(blocks.size());
    std::vector<std::string> rows(blocks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(options.threads)
    for (std::int64_t b = 0; b < count; ++b) {
      const auto i = static_cast<std::size_t>(b);
      local[i] = empty_reports(claims, n_start, n_end);
      eval.run(blocks[i], starts[i], local[i], rows[i]);
    }
    // deterministic, ascending merge
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t c = 0; c < reports.size(); ++c)
        absorb(reports[c], local[b][c]);
      if (options.samples)
        *options.samples << rows[b];
    }

    state = running;
    for (VerificationReport& r : reports)
      r.checkpoint = shard_end;
    if (checkpoint.is_open())
      write_checkpoint(checkpoint, claims, n_start, n_end, options.shard_size, state, reports);
    next = shard_end + 1;
    ++shards;
  }
  for (VerificationReport& r : reports)
    finalize(r);
  return reports;
}

std::vector<VerificationReport> scan_theorem_2_1(std::uint64_t n_start, std::uint64_t n_end,
                                                 const ScanOptions& options)
{
  const ClaimId claims[] = {ClaimId::THM_2_1_LOWER, ClaimId::THM_2_1_UPPER};
  return scan(claims, n_start, n_end, options);
}

namespace {

VerificationReport scan_one(ClaimId claim, std::uint64_t n_start, std::uint64_t n_end,
                            const ScanOptions& options)
{
  const ClaimId claims[] = {claim};
  return scan(claims, n_start, n_end, options).front();
}

} // namespace

VerificationReport scan_theorem_2_2(std::uint64_t n_start, std::uint64_t n_end,
                                    const ScanOptions& options)
{
  return scan_one(ClaimId::THM_2_2, n_start, n_end, options);
}

VerificationReport scan_A1_upper(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options)
{
  return scan_one(ClaimId::A1_LT_BETA1, n_start, n_end, options);
}

VerificationReport scan_A0_upper_M(std::uint64_t n_start, std::uint64_t n_end,
                                   const ScanOptions& options)
{
  return scan_one(ClaimId::A0_LT_M, n_start, n_end, options);
}

VerificationReport scan_J_bounds(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options)
{
  return scan_one(ClaimId::J_BOUNDS, n_start, n_end, options);
}

VerificationReport scan_kappa_33(std::uint64_t n_start, std::uint64_t n_end,
                                 const ScanOptions& options)
{
  return scan_one(ClaimId::KAPPA_33, n_start, n_end, options);
}

namespace serial {

std::vector<VerificationReport> scan(std::span<const ClaimId> claims, std::uint64_t n_start,
                                     std::uint64_t n_end)
{
  check_request(claims, n_start, n_end);
  const ScanConstants& k = scan_constants();
  std::vector<VerificationReport> reports = empty_reports(claims, n_start, n_end);
  sieve::ScanOptions opts;
  opts.emit = sieve::Emit::per_integer;
  sieve::serial::prefix_scan(n_end, opts, [&](const PrefixState& s) {
    if (s.n < n_start)
      return;
    const double loglog = std::log(std::log(static_cast<double>(s.n)));
    for (VerificationReport& r : reports)
      observe(r, s, loglog, k);
  });
  for (VerificationReport& r : reports) {
    r.checkpoint = n_end;
    finalize(r);
  }
  return reports;
}

} // namespace serial

} // namespace omega::verifier
