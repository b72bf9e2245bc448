#include <omega/cli.hpp>
#include <omega/constants.hpp>
#include <omega/envelopes.hpp>
#include <omega/identities.hpp>
#include <omega/sieve.hpp>
#include <omega/verifier.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace omega::cli {

namespace {

using json = nlohmann::ordered_json;
using verifier::ClaimId;
using verifier::VerificationReport;

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::atomic<bool> interrupted{false};

extern "C" void on_sigint(int)
{
  interrupted.store(true);
}

int default_threads()
{
  if (const char* env = std::getenv("OMEGA_BOUNDS_THREADS")) {
    try {
      const unsigned long long t = parse_count(env);
      if (t >= 1 && t <= 4096)
        return static_cast<int>(t);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("OMEGA_BOUNDS_THREADS must be a positive integer, got '") + env +
                     "'");
  }
  return std::max(1, omp_get_num_procs());
}

int exit_for(std::span<const VerificationReport> reports)
{
  bool partial = false;
  for (const VerificationReport& r : reports) {
    if (r.status == verifier::Status::fail)
      return exit_fail;
    if (r.status == verifier::Status::partial)
      partial = true;
  }
  return partial ? exit_partial : exit_pass;
}

json constant_json(const std::string& name, const BigReal& v, int digits)
{
  return json{{"name", name},
              {"value_string", v.fixed(digits)},
              {"digits", digits},
              {"error_bound_string", v.error_string()}};
}

std::vector<ClaimId> claims_for(const std::string& id)
{
  if (id == "THM_2_1")
    return {ClaimId::THM_2_1_LOWER, ClaimId::THM_2_1_UPPER};
  try {
    return {verifier::parse_claim(id)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> powers_of_ten_between(std::uint64_t lo, std::uint64_t hi)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 1; p <= hi; p *= 10) {
    if (p >= lo)
      out.push_back(p);
    if (p > hi / 10)
      break;
  }
  return out;
}

struct VerifyArgs {
  std::string claim;
  std::string from;
  std::string to;
  std::string checkpoint;
  std::string samples;
  std::vector<std::string> at;
  std::vector<int> m{1, 2, 3};
  std::string shard;
  std::string segment;
  std::string stop_after;
};

std::vector<VerificationReport> run_verify(const VerifyArgs& a, int threads)
{
  const std::vector<ClaimId> claims = claims_for(a.claim);
  std::vector<std::uint64_t> at;
  for (const std::string& s : a.at)
    at.push_back(parse_count(s));
  const bool ranged = !a.from.empty() || !a.to.empty();
  if (ranged && (a.from.empty() || a.to.empty()))
    throw UsageError("--from and --to go together");
  const std::uint64_t from = ranged ? parse_count(a.from) : 0;
  const std::uint64_t to = ranged ? parse_count(a.to) : 0;
  if (ranged && from > to)
    throw UsageError("malformed range: --from exceeds --to");

  if (verifier::is_range_claim(claims.front())) {
    if (!ranged)
      throw UsageError("range claims need --from and --to");
    if (from < 2)
      throw UsageError("malformed range: --from must be at least 2");
    verifier::ScanOptions opts;
    opts.threads = threads;
    if (!a.shard.empty())
      opts.shard_size = parse_count(a.shard);
    if (!a.segment.empty())
      opts.segment_size = parse_count(a.segment);
    if (opts.shard_size == 0 || opts.segment_size == 0)
      throw UsageError("--shard and --segment must be positive");
    if (!a.stop_after.empty())
      opts.stop_after_shards = parse_count(a.stop_after);
    opts.checkpoint_path = a.checkpoint;
    opts.stop = &interrupted;
    std::ofstream samples;
    if (!a.samples.empty()) {
      samples.open(a.samples);
      if (!samples)
        throw UsageError("cannot open " + a.samples);
      samples << "n,A0,A1,slack\n";
      opts.samples = &samples;
    }
    interrupted.store(false);
    const auto previous = std::signal(SIGINT, on_sigint);
    try {
      auto reports = verifier::scan(claims, from, to, opts);
      std::signal(SIGINT, previous);
      return reports;
    } catch (...) {
      std::signal(SIGINT, previous);
      throw;
    }
  }

  switch (claims.front()) {
  case ClaimId::ENVELOPE_M1: {
    std::vector<std::uint64_t> xs = at;
    if (xs.empty())
      xs = ranged ? powers_of_ten_between(std::max<std::uint64_t>(from, 3), to)
                  : std::vector<std::uint64_t>{10000, 100000, 1000000, 10000000, 100000000};
    if (xs.empty())
      throw UsageError("no powers of ten in the range; use --at");
    return {verifier::check_main_term(xs, a.m, threads)};
  }
  case ClaimId::MERTENS_SUM: {
    std::vector<std::uint64_t> ys = at;
    if (ys.empty())
      ys = ranged ? powers_of_ten_between(std::max<std::uint64_t>(from, 2), to)
                  : std::vector<std::uint64_t>{1000, 1000000, 100000000};
    if (ys.empty())
      throw UsageError("no powers of ten in the range; use --at");
    return {verifier::mertens_sum_check(ys)};
  }
  case ClaimId::PI_LI_INTEGRAL:
    if (at.size() > 1)
      throw UsageError("PI_LI_INTEGRAL takes a single --at Y");
    return {verifier::pi_li_integral_check(at.empty() ? (ranged ? to : 100000000) : at.front())};
  case ClaimId::INEQ_33X:
    return {verifier::ineq_33x_crossing()};
  case ClaimId::THRESHOLDS:
    return {verifier::thresholds_check()};
  case ClaimId::H_CROSSING:
    return {verifier::h_crossing_check()};
  default:
    throw UsageError("unsupported claim");
  }
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<VerificationReport> merge_files(const std::vector<std::string>& files)
{
  std::vector<ClaimId> order;
  std::vector<std::vector<VerificationReport>> groups;
  for (const std::string& f : files) {
    std::vector<VerificationReport> parts;
    try {
      parts = verifier::reports_from_json(read_file(f));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(f + ": not a report file: " + e.what());
    }
    for (VerificationReport& r : parts) {
      const auto it = std::find(order.begin(), order.end(), r.claim);
      if (it == order.end()) {
        order.push_back(r.claim);
        groups.push_back({std::move(r)});
      } else {
        groups[static_cast<std::size_t>(it - order.begin())].push_back(std::move(r));
      }
    }
  }
  std::vector<VerificationReport> merged;
  for (const auto& g : groups)
    merged.push_back(verifier::merge_reports(g));
  return merged;
}

std::vector<double> parse_grid(const std::string& spec, int& steps)
{
  const auto first = spec.find(':');
  const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw UsageError("--x-grid must be LO:HI:STEPS");
  try {
    const double lo = std::stod(spec.substr(0, first));
    const double hi = std::stod(spec.substr(first + 1, second - first - 1));
    steps = std::stoi(spec.substr(second + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("--x-grid must be LO:HI:STEPS");
  }
}

void write_dump(const std::string& format, const std::string& path, std::uint64_t x,
                const sieve::ScanOptions& base)
{
  const bool binary = format == "bin";
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out)
    throw UsageError("cannot open " + path);
  sieve::ScanOptions opts = base;
  opts.emit = sieve::Emit::per_segment;
  sieve::prefix_scan(x, opts, [&](const sieve::PrefixState& s) {
    if (binary)
      sieve::write_prefix_binary(out, s);
    else
      sieve::write_prefix_jsonl(out, s);
  });
}

} // namespace

unsigned long long parse_count(const std::string& text)
{
  const auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto whole = [&](const std::string& s) {
    if (!digits_only(s))
      throw std::invalid_argument("not a count: '" + text + "'");
    return std::stoull(s);
  };
  std::string base;
  std::string exponent;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    base = text.substr(0, e);
    exponent = text.substr(e + 1);
  } else if (const auto c = text.find('^'); c != std::string::npos) {
    if (text.substr(0, c) != "10")
      throw std::invalid_argument("not a count: '" + text + "'");
    base = "1";
    exponent = text.substr(c + 1);
  } else {
    return whole(text);
  }
  unsigned long long v = whole(base);
  const unsigned long long k = whole(exponent);
  for (unsigned long long i = 0; i < k; ++i) {
    if (v > ~0ULL / 10)
      throw std::out_of_range("count too large: '" + text + "'");
    v *= 10;
  }
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Global bounds for the averages of omega(n) and Omega(n): sieve sums, constants, "
               "envelopes and verification scans"};
  app.name("omega-bounds");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: OMEGA_BOUNDS_THREADS or all cores)")
    ->check(CLI::PositiveNumber);

  // constants
  auto* cmd_constants = app.add_subcommand("constants", "print the bound constants as JSON");
  int digits = 50;
  int m_max = 5;
  std::string name;
  cmd_constants->add_option("--digits", digits, "decimal digits")->check(CLI::Range(1, 1000));
  cmd_constants->add_option("--name", name, "print only this constant");
  cmd_constants->add_option("--m-max", m_max, "number of a_j coefficients")->check(CLI::Range(1, 10));

  // sum
  auto* cmd_sum = app.add_subcommand("sum", "exact S_omega(X), S_Omega(X) and J(X)");
  std::string sum_x;
  std::string sum_segment;
  std::string dump_format;
  std::string dump_path;
  cmd_sum->add_option("--x", sum_x, "upper end X")->required();
  cmd_sum->add_option("--segment", sum_segment, "sieve segment size");
  cmd_sum->add_option("--dump", dump_format, "write per-segment prefix states")
    ->check(CLI::IsMember({"bin", "jsonl"}));
  cmd_sum->add_option("--out", dump_path, "file for --dump");

  // hyperbola
  auto* cmd_hyp = app.add_subcommand("hyperbola", "hyperbola split of S_omega(X) at Y");
  std::string hyp_x;
  std::string hyp_y;
  cmd_hyp->add_option("--x", hyp_x, "X")->required();
  cmd_hyp->add_option("--y", hyp_y, "Y, 1 <= Y <= X")->required();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run a verification scan or spot check");
  VerifyArgs va;
  cmd_verify->add_option("--claim", va.claim, "claim id (THM_2_1 runs both bounds)")->required();
  cmd_verify->add_option("--from", va.from, "first n");
  cmd_verify->add_option("--to", va.to, "last n");
  cmd_verify->add_option("--checkpoint", va.checkpoint, "JSON-lines checkpoint file");
  cmd_verify->add_option("--samples", va.samples, "CSV of n,A0,A1,slack at powers of two");
  cmd_verify->add_option("--at", va.at, "sample points for spot checks");
  cmd_verify->add_option("--m", va.m, "expansion orders for ENVELOPE_M1");
  cmd_verify->add_option("--shard", va.shard, "integers per shard");
  cmd_verify->add_option("--segment", va.segment, "integers per sieve segment");
  cmd_verify->add_option("--stop-after-shards", va.stop_after, "stop early (yields PARTIAL)");

  // envelope
  auto* cmd_env = app.add_subcommand("envelope", "CSV of an envelope on a log-spaced grid");
  std::string which;
  int env_m = 1;
  std::string grid;
  cmd_env->add_option("--which", which, "E_omega|E_Omega|Ehat_omega|Ehat_Omega|h")
    ->required()
    ->check(CLI::IsMember({"E_omega", "E_Omega", "Ehat_omega", "Ehat_Omega", "h"}));
  cmd_env->add_option("--m", env_m, "expansion order")->check(CLI::Range(1, 10));
  cmd_env->add_option("--x-grid", grid, "LO:HI:STEPS")->required();

  // report
  auto* cmd_report = app.add_subcommand("report", "combine report files");
  bool merge = false;
  std::vector<std::string> files;
  cmd_report->add_flag("--merge", merge, "merge shard reports into one per claim")->required();
  cmd_report->add_option("files", files, "report files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (threads == 0)
      threads = default_threads();

    if (*cmd_constants) {
      const constants::ConstantSet set = constants::constant_set(digits, m_max);
      const auto named = set.named();
      if (!name.empty()) {
        const auto it = std::find_if(named.begin(), named.end(),
                                     [&](const constants::NamedConstant& c) { return c.name == name; });
        if (it == named.end())
          throw UsageError("unknown constant: " + name);
        out << constant_json(it->name, it->value, digits).dump(2) << '\n';
      } else {
        json arr = json::array();
        for (const auto& c : named)
          arr.push_back(constant_json(c.name, c.value, digits));
        out << arr.dump(2) << '\n';
      }
      return exit_pass;
    }

    if (*cmd_sum) {
      sieve::ScanOptions opts;
      opts.emit = sieve::Emit::none;
      opts.threads = threads;
      if (!sum_segment.empty())
        opts.segment_size = parse_count(sum_segment);
      if (opts.segment_size == 0)
        throw UsageError("--segment must be positive");
      const std::uint64_t x = parse_count(sum_x);
      if (!dump_format.empty()) {
        if (dump_path.empty())
          throw UsageError("--dump needs --out");
        write_dump(dump_format, dump_path, x, opts);
      }
      const sieve::PrefixState s = sieve::prefix_scan(x, opts);
      json j{{"x", std::to_string(x)},
             {"sum_omega", to_string(s.sum_omega)},
             {"sum_big_omega", to_string(s.sum_big_omega)},
             {"j", to_string(sieve::j_diff(s))}};
      out << j.dump(2) << '\n';
      return exit_pass;
    }

    if (*cmd_hyp) {
      const std::uint64_t x = parse_count(hyp_x);
      const std::uint64_t y = parse_count(hyp_y);
      if (y == 0 || y > x)
        throw UsageError("hyperbola needs 1 <= y <= x");
      const sieve::PrimeTable table = sieve::primes_up_to(std::max<std::uint64_t>(2, x));
      const identities::HyperbolaSplit h = identities::hyperbola_rhs(x, y, table);
      sieve::ScanOptions opts;
      opts.emit = sieve::Emit::none;
      opts.threads = threads;
      const sieve::PrefixState s = sieve::prefix_scan(x, opts);
      const bool match = h.total() == s.sum_omega;
      json j{{"x", std::to_string(x)},
             {"y", std::to_string(y)},
             {"term_prime_sum", to_string(h.term_prime_sum)},
             {"term_pi_sum", to_string(h.term_pi_sum)},
             {"term_correction", to_string(h.term_correction)},
             {"total", to_string(h.total())},
             {"sieve_sum_omega", to_string(s.sum_omega)},
             {"verdict", match ? "EXACT-MATCH" : "MISMATCH"}};
      out << j.dump(2) << '\n';
      return match ? exit_pass : exit_fail;
    }

    if (*cmd_verify) {
      const std::vector<VerificationReport> reports = run_verify(va, threads);
      out << verifier::to_json(std::span<const VerificationReport>(reports)) << '\n';
      return exit_for(reports);
    }

    if (*cmd_env) {
      int steps = 0;
      const std::vector<double> range = parse_grid(grid, steps);
      const envelopes::Which w = envelopes::parse_which(which);
      envelopes::MainTermConstants k{0, 0, {}};
      if (w != envelopes::Which::h) {
        const constants::ConstantSet set = constants::constant_set(30, env_m);
        k.M = set.M.to_double();
        k.M_prime = set.M_prime.to_double();
        for (const BigReal& a : set.a)
          k.a.push_back(a.to_double());
      }
      const auto rows = envelopes::envelope_grid(w, env_m, range[0], range[1], steps, k);
      out << (w == envelopes::Which::h ? "z,value,threshold,ratio\n" : "x,value,main,ratio\n");
      char line[128];
      for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", r.x, r.value, r.main, r.ratio);
        out << line;
      }
      return exit_pass;
    }

    if (*cmd_report) {
      const std::vector<VerificationReport> merged = merge_files(files);
      out << verifier::to_json(std::span<const VerificationReport>(merged)) << '\n';
      return exit_for(merged);
    }
  } catch (const std::exception& e) {
    // bad arguments, unreadable files and checkpoint mismatches alike
    err << "omega-bounds: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace omega::cli
