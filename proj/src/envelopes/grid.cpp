#include <omega/envelopes.hpp>

#include <cmath>

namespace omega::envelopes {

Which parse_which(const std::string& name)
{
  if (name == "E_omega")
    return Which::E_omega;
  if (name == "E_Omega")
    return Which::E_Omega;
  if (name == "Ehat_omega")
    return Which::Ehat_omega;
  if (name == "Ehat_Omega")
    return Which::Ehat_Omega;
  if (name == "h")
    return Which::h;
  throw std::invalid_argument("unknown envelope: " + name);
}

std::string to_string(Which which)
{
  switch (which) {
  case Which::E_omega: return "E_omega";
  case Which::E_Omega: return "E_Omega";
  case Which::Ehat_omega: return "Ehat_omega";
  case Which::Ehat_Omega: return "Ehat_Omega";
  case Which::h: return "h";
  }
  return "?";
}

std::vector<GridRow> envelope_grid(Which which, int m, double lo, double hi, int steps,
                                   const MainTermConstants& constants)
{
  if (!(lo > 0) || !(hi >= lo) || steps < 1)
    throw std::invalid_argument("envelope_grid: needs 0 < lo <= hi and steps >= 1");
  if (which != Which::h && static_cast<std::size_t>(m) > constants.a.size())
    throw std::invalid_argument("envelope_grid: m exceeds the available a_j");

  std::vector<GridRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    const double x = i == 0 ? lo : i == steps - 1 ? hi : std::exp(log_lo + t * (log_hi - log_lo));
    GridRow row{x, 0, 1, 0};
    if (which == Which::h) {
      row.value = h_corollary(x);
      row.ratio = row.value;
    } else {
      const bool big = which == Which::E_Omega || which == Which::Ehat_Omega;
      switch (which) {
      case Which::E_omega: row.value = envelope_E_omega(x, m); break;
      case Which::E_Omega: row.value = envelope_E_Omega(x, m); break;
      case Which::Ehat_omega: row.value = envelope_Ehat_omega(x, m); break;
      default: row.value = envelope_Ehat_Omega(x, m); break;
      }
      row.main = main_term<double>(x, big ? constants.M_prime : constants.M, constants.a, m);
      row.ratio = row.value / row.main;
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace omega::envelopes
