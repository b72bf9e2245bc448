#include <omega/verifier.hpp>

#include "json.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace omega::verifier {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::pair<ClaimId, const char*>, 13> claim_names{{
  {ClaimId::THM_2_1_LOWER, "THM_2_1_LOWER"},
  {ClaimId::THM_2_1_UPPER, "THM_2_1_UPPER"},
  {ClaimId::THM_2_2, "THM_2_2"},
  {ClaimId::A1_LT_BETA1, "A1_LT_BETA1"},
  {ClaimId::A0_LT_M, "A0_LT_M"},
  {ClaimId::J_BOUNDS, "J_BOUNDS"},
  {ClaimId::ENVELOPE_M1, "ENVELOPE_M1"},
  {ClaimId::MERTENS_SUM, "MERTENS_SUM"},
  {ClaimId::KAPPA_33, "KAPPA_33"},
  {ClaimId::INEQ_33X, "INEQ_33X"},
  {ClaimId::THRESHOLDS, "THRESHOLDS"},
  {ClaimId::PI_LI_INTEGRAL, "PI_LI_INTEGRAL"},
  {ClaimId::H_CROSSING, "H_CROSSING"},
}};

Status parse_status(const std::string& name)
{
  if (name == "PASS")
    return Status::pass;
  if (name == "FAIL")
    return Status::fail;
  if (name == "PARTIAL")
    return Status::partial;
  throw std::invalid_argument("unknown status: " + name);
}

json extremum_json(const std::optional<Extremum>& e)
{
  if (!e)
    return nullptr;
  return json{{"value", e->slack}, {"n", std::to_string(e->n)}};
}

std::optional<Extremum> extremum_from(const json& j)
{
  if (j.is_null())
    return std::nullopt;
  return Extremum{j.at("value").get<double>(), std::stoull(j.at("n").get<std::string>())};
}

json report_json(const VerificationReport& r)
{
  json witnesses = json::array();
  for (const Witness& w : r.witnesses)
    witnesses.push_back({{"n", std::to_string(w.n)}, {"sum", omega::to_string(w.sum)}});
  json violations = json::array();
  for (const Violation& v : r.violations)
    violations.push_back({{"n", std::to_string(v.n)}, {"slack", v.slack}});
  json checks = json::array();
  for (const Check& c : r.checks) {
    json item{{"name", c.name}, {"value", c.value}, {"lower", c.lower}, {"upper", c.upper}};
    item["ratio"] = c.ratio ? json(*c.ratio) : json(nullptr);
    item["ok"] = c.ok;
    checks.push_back(std::move(item));
  }
  return json{{"claim_id", to_string(r.claim)},
              {"range", {{"n_start", std::to_string(r.n_start)}, {"n_end", std::to_string(r.n_end)}}},
              {"status", to_string(r.status)},
              {"checkpoint", std::to_string(r.checkpoint)},
              {"min_slack", extremum_json(r.min_slack)},
              {"max_slack", extremum_json(r.max_slack)},
              {"equality_witnesses", std::move(witnesses)},
              {"violations", std::move(violations)},
              {"violation_count", std::to_string(r.violation_count)},
              {"checks", std::move(checks)}};
}

VerificationReport report_from(const json& j)
{
  VerificationReport r;
  r.claim = parse_claim(j.at("claim_id").get<std::string>());
  r.n_start = std::stoull(j.at("range").at("n_start").get<std::string>());
  r.n_end = std::stoull(j.at("range").at("n_end").get<std::string>());
  r.status = parse_status(j.at("status").get<std::string>());
  r.checkpoint = std::stoull(j.at("checkpoint").get<std::string>());
  r.min_slack = extremum_from(j.at("min_slack"));
  r.max_slack = extremum_from(j.at("max_slack"));
  for (const json& w : j.at("equality_witnesses"))
    r.witnesses.push_back(
      {std::stoull(w.at("n").get<std::string>()), parse_u128(w.at("sum").get<std::string>())});
  for (const json& v : j.at("violations"))
    r.violations.push_back({std::stoull(v.at("n").get<std::string>()), v.at("slack").get<double>()});
  r.violation_count = std::stoull(j.at("violation_count").get<std::string>());
  for (const json& c : j.at("checks")) {
    Check check;
    check.name = c.at("name").get<std::string>();
    check.value = c.at("value").get<std::string>();
    check.lower = c.at("lower").get<std::string>();
    check.upper = c.at("upper").get<std::string>();
    if (!c.at("ratio").is_null())
      check.ratio = c.at("ratio").get<double>();
    check.ok = c.at("ok").get<bool>();
    r.checks.push_back(std::move(check));
  }
  return r;
}

void merge_min(std::optional<Extremum>& into, const std::optional<Extremum>& other)
{
  if (!other)
    return;
  if (!into || other->slack < into->slack || (other->slack == into->slack && other->n < into->n))
    into = other;
}

void merge_max(std::optional<Extremum>& into, const std::optional<Extremum>& other)
{
  if (!other)
    return;
  if (!into || other->slack > into->slack || (other->slack == into->slack && other->n < into->n))
    into = other;
}

} // namespace

std::string to_string(ClaimId claim)
{
  for (const auto& [id, name] : claim_names)
    if (id == claim)
      return name;
  throw std::invalid_argument("unknown claim id");
}

ClaimId parse_claim(const std::string& name)
{
  for (const auto& [id, text] : claim_names)
    if (name == text)
      return id;
  throw std::invalid_argument("unknown claim id: " + name);
}

bool is_range_claim(ClaimId claim)
{
  switch (claim) {
  case ClaimId::THM_2_1_LOWER:
  case ClaimId::THM_2_1_UPPER:
  case ClaimId::THM_2_2:
  case ClaimId::A1_LT_BETA1:
  case ClaimId::A0_LT_M:
  case ClaimId::J_BOUNDS:
  case ClaimId::KAPPA_33:
    return true;
  default:
    return false;
  }
}

std::string to_string(Status status)
{
  switch (status) {
  case Status::pass:
    return "PASS";
  case Status::fail:
    return "FAIL";
  case Status::partial:
    return "PARTIAL";
  }
  return "PARTIAL";
}

void finalize(VerificationReport& report)
{
  const bool failed =
    report.violation_count > 0 || std::any_of(report.checks.begin(), report.checks.end(),
                                              [](const Check& c) { return !c.ok; });
  if (failed)
    report.status = Status::fail;
  else if (report.checkpoint < report.n_end)
    report.status = Status::partial;
  else
    report.status = Status::pass;
}

VerificationReport merge_reports(std::span<const VerificationReport> parts)
{
  if (parts.empty())
    throw std::invalid_argument("merge_reports: nothing to merge");
  std::vector<VerificationReport> sorted(parts.begin(), parts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     return a.n_start < b.n_start;
                   });
  const ClaimId claim = sorted.front().claim;
  const bool tiled = is_range_claim(claim);

  VerificationReport out;
  out.claim = claim;
  out.n_start = sorted.front().n_start;
  out.n_end = sorted.front().n_end;
  out.checkpoint = sorted.front().checkpoint;
  bool complete = sorted.front().checkpoint >= sorted.front().n_end;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const VerificationReport& p = sorted[i];
    if (p.claim != claim)
      throw std::invalid_argument("merge_reports: reports for different claims");
    if (i > 0) {
      if (tiled && p.n_start != out.n_end + 1)
        throw std::invalid_argument("merge_reports: ranges do not tile");
      out.n_start = std::min(out.n_start, p.n_start);
      out.n_end = std::max(out.n_end, p.n_end);
      // the merged cursor only advances across complete predecessors
      if (complete) {
        out.checkpoint = p.checkpoint;
        complete = p.checkpoint >= p.n_end;
      }
    }
    merge_min(out.min_slack, p.min_slack);
    merge_max(out.max_slack, p.max_slack);
    out.witnesses.insert(out.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
    out.violations.insert(out.violations.end(), p.violations.begin(), p.violations.end());
    out.violation_count += p.violation_count;
    out.checks.insert(out.checks.end(), p.checks.begin(), p.checks.end());
  }
  const auto by_n = [](const auto& a, const auto& b) { return a.n < b.n; };
  std::stable_sort(out.witnesses.begin(), out.witnesses.end(), by_n);
  out.witnesses.erase(std::unique(out.witnesses.begin(), out.witnesses.end()), out.witnesses.end());
  std::stable_sort(out.violations.begin(), out.violations.end(), by_n);
  if (out.violations.size() > max_listed_violations)
    out.violations.resize(max_listed_violations);
  finalize(out);
  return out;
}

std::string to_json(const VerificationReport& report)
{
  return report_json(report).dump(2);
}

std::string to_json(std::span<const VerificationReport> reports)
{
  json arr = json::array();
  for (const VerificationReport& r : reports)
    arr.push_back(report_json(r));
  return arr.dump(2);
}

std::vector<VerificationReport> reports_from_json(const std::string& text)
{
  const json j = json::parse(text);
  std::vector<VerificationReport> out;
  if (j.is_array()) {
    for (const json& item : j)
      out.push_back(report_from(item));
  } else {
    out.push_back(report_from(j));
  }
  return out;
}

} // namespace omega::verifier
