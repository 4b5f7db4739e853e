#include "charzero/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/parallel.hpp"
#include "charzero/primes.hpp"
#include "charzero/spectral.hpp"
#include "charzero/version.hpp"

namespace charzero::harness {

namespace {

/// Largest number of zeros in any window |gamma - phi| <= 1/4 with |phi| <= T.
int max_window_count(const std::vector<ZeroRecord>& zs, double T) {
  int best = 0;
  auto count_at = [&](double phi) {
    return static_cast<int>(
        std::count_if(zs.begin(), zs.end(), [phi](const ZeroRecord& z) { return std::abs(z.gamma - phi) <= 0.25; }));
  };
  for (const auto& z : zs) {
    for (double phi : {z.gamma - 0.25, z.gamma + 0.25}) best = std::max(best, count_at(std::clamp(phi, -T, T)));
  }
  return best;
}

AuditRow audit_row(const dirichlet::Character& chi, const ScenarioConfig& config) {
  AuditRow row;
  const double q = static_cast<double>(chi.modulus());
  const double log_q = std::log(q);
  const double eps = config.epsilon;
  row.q = chi.modulus();
  row.conrey = chi.conrey_label();
  row.order = chi.order();
  row.epsilon = eps;
  row.x = std::pow(q, eps);
  row.abs_S = std::abs(dirichlet::partial_sum(chi, row.x).value);
  const double log_x = std::log(row.x);

  if (config.budget == BudgetRule::Cor4) {
    row.budget = eps * eps * log_q / 1600.0;
    row.zero_count = zeros::count_zeros_argument_principle(chi, zeros::Region::rectangle(0.75, 1.02, -0.25, 0.25));
    row.predicted_bound = row.x / std::pow(log_x, 0.01);
    row.hypothesis_ok = chi.order() == 2 && eps > std::pow(log_q, -1.0 / 3.0) && row.zero_count <= row.budget;
  } else {
    const double T = config.T;
    row.budget = eps * eps * log_q / 1440.0;
    const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.75, 1.02, -T - 0.25, T + 0.25));
    row.zero_count = max_window_count(zs, T);
    row.predicted_bound = row.x / T;
    row.hypothesis_ok = T >= 1.0 && T <= std::pow(log_q, 1.0 / 200.0) && eps >= std::pow(log_q, -1.0 / 3.0) &&
                        row.zero_count <= row.budget;
  }
  row.ratio = row.abs_S / row.predicted_bound;

  // The underlying disk theorem needs exp(sqrt(log q)) <= x <= sqrt(q), N = 1
  // admissible ((log x)^{1/100} >= 1) and c <= L <= (log x) / 2 for L = eps^2 log q / 4.
  const double L = eps * eps * log_q / 4.0;
  const bool x_ok = std::exp(std::sqrt(log_q)) <= row.x && row.x <= std::sqrt(q);
  row.vacuous = !(x_ok && log_x >= 1.0 && config.c_theorem <= L && L <= log_x / 2.0);
  if (row.hypothesis_ok && !row.vacuous) row.conclusion_ok = row.abs_S <= config.c_conclusion * row.predicted_bound;

  row.region_sigma_min = std::max(0.0, 1.0 - config.c_region / (std::pow(eps, 8.0) * log_q));
  row.region_t_max = config.c_region / eps;
  row.region_hypothesis_ok = eps <= 1.0 && eps >= std::pow(log_q, -1.0 / 200.0) && row.abs_S >= eps * row.x;
  if (row.region_sigma_min < 1.0) {
    row.region_zero_count = zeros::count_zeros_argument_principle(
        chi, zeros::Region::rectangle(row.region_sigma_min, 1.02, -row.region_t_max, row.region_t_max));
  }
  return row;
}

}  // namespace

std::string_view to_string(BudgetRule rule) { return rule == BudgetRule::Cor4 ? "cor4" : "cor3"; }

AuditReport corollary_zero_budget_audit(const ScenarioConfig& config) {
  if (config.q_min < 1 || config.q_min > config.q_max) throw DomainError("audit: empty modulus range");
  if (!(config.epsilon > 0.0)) throw DomainError("audit: epsilon must be positive");
  std::vector<dirichlet::Character> chars;
  for (std::uint64_t q = config.q_min; q <= config.q_max; ++q) {
    for (auto& chi : dirichlet::primitive_characters(q)) {
      if (!chi.is_principal()) chars.push_back(std::move(chi));
    }
  }
  AuditReport report;
  report.version = std::string(kVersion);
  report.rule = config.budget;
  report.config = config;
  report.rows.resize(chars.size());
  parallel_for(chars.size(), [&](std::size_t i) { report.rows[i] = audit_row(chars[i], config); });
  return report;
}

int legendre_symbol(std::uint64_t a, std::uint64_t p) {
  if (p == 2) return a % 2 == 1 ? 1 : 0;
  a %= p;
  if (a == 0) return 0;
  return primes::powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t nonresidue_count(std::uint64_t q, double x) {
  if (!primes::is_prime(q)) throw DomainError("nonresidue_count: modulus must be prime");
  if (x < 1.0) return 0;
  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  const std::uint64_t periods = n_max / q;
  const std::uint64_t rest = n_max % q;
  std::uint64_t count = periods * ((q - 1) / 2);
  for (std::uint64_t n = 1; n <= rest; ++n) count += legendre_symbol(n, q) == -1 ? 1 : 0;
  return count;
}

CensusResult nonresidue_census(std::uint64_t q, double u) {
  if (!primes::is_prime(q)) throw DomainError("nonresidue_census: modulus must be prime");
  CensusResult out;
  out.q = q;
  out.u = u;
  const double factor = spectral::spectrum_bound(spectral::BoundMode::Cor18, u);
  out.x = std::pow(static_cast<double>(q), u / 4.0);
  out.count = nonresidue_count(q, out.x);
  out.bound = factor * out.x;
  out.fraction = static_cast<double>(out.count) / out.x;
  out.exceeds_bound = static_cast<double>(out.count) >= out.bound;
  return out;
}

std::vector<std::uint64_t> census_primes(std::uint64_t lo, std::uint64_t hi, std::size_t count) {
  if (lo > hi) throw DomainError("census_primes: empty range");
  const auto list = primes::prime_list(hi);
  const auto all = list->up_to(hi);
  const auto first = std::lower_bound(all.begin(), all.end(), lo);
  const std::vector<std::uint64_t> ps(first, all.end());
  if (ps.size() < count) throw RangeError("census_primes: fewer primes than requested");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(ps[i * ps.size() / count]);
  return out;
}

ProductSearch product_large_sum_search(const multfn::CMF& f1, const multfn::CMF& f2, double x1, double x2,
                                       double eta, const ScenarioConfig& config) {
  if (!(eta > 0.0)) throw DomainError("product_large_sum_search: eta must be positive");
  ProductSearch out;
  out.mean1 = multfn::mean_value(f1, x1);
  out.mean2 = multfn::mean_value(f2, x2);
  out.hypothesis_ok = std::abs(out.mean1) >= eta && std::abs(out.mean2) >= eta;
  out.phi1 = multfn::find_phi_and_M(f1, x1).phi;
  out.phi2 = multfn::find_phi_and_M(f2, x2).phi;
  out.phi = out.phi1 + out.phi2;
  out.x_min = std::min(x1, x2);
  out.witness = multfn::prop61_witness(f1.times(f2), out.x_min, config.c_witness);
  out.xi_report = config.c_xi * std::pow(eta, 6.0);
  out.exponent_ok = out.witness.y >= std::pow(out.x_min, out.xi_report);
  out.mean_ok = std::abs(out.witness.mean) >= out.xi_report;
  return out;
}

PowerSearch power_large_sum_search(const multfn::CMF& f, double x, double eta, int k, const ScenarioConfig& config) {
  if (k < 1) throw DomainError("power_large_sum_search: k must be >= 1");
  if (!(eta > 0.0)) throw DomainError("power_large_sum_search: eta must be positive");
  PowerSearch out;
  out.k = k;
  out.mean = multfn::mean_value(f, x);
  out.hypothesis_ok = std::abs(out.mean) >= eta;
  out.witness = multfn::prop61_witness(f.power(k), x, config.c_witness);
  out.y_target = std::pow(x, config.c_xi * std::pow(eta, 2.0 * k * k));
  out.y_ok = out.witness.y >= out.y_target;
  return out;
}

MainTheoremReport main_theorem_experiment(std::uint64_t q, std::uint64_t conrey, double x,
                                          const std::vector<double>& L_grid, const ScenarioConfig& config) {
  if (!(x > 1.0)) throw DomainError("main_theorem_experiment: requires x > 1");
  const dirichlet::Character chi = dirichlet::character(q, conrey);
  MainTheoremReport out;
  out.version = std::string(kVersion);
  out.q = q;
  out.conrey = conrey;
  out.order = chi.order();
  out.x = x;
  out.config = config;
  const double log_q = std::log(static_cast<double>(q));
  out.x_range_lo = std::exp(std::sqrt(log_q));
  out.x_range_hi = std::sqrt(static_cast<double>(q));
  out.x_range_nonempty = out.x_range_lo <= out.x_range_hi;
  out.x_in_range = out.x_range_lo <= x && x <= out.x_range_hi;

  out.y0 = std::log(x);
  out.abs_S = std::abs(dirichlet::partial_sum(chi, x).value);
  out.N = out.abs_S > 0.0 ? x / out.abs_S : std::numeric_limits<double>::infinity();
  out.lemma_hypothesis_ok = out.y0 >= 3.0 && out.abs_S >= x * std::pow(out.y0, -0.01);
  const auto f = multfn::from_character(q, conrey, static_cast<std::uint64_t>(std::ceil(x)));
  const auto data = multfn::find_phi_and_M(f, x);
  out.phi = data.phi;
  out.M = data.M;
  const double k = static_cast<double>(chi.order());
  out.phi_bound = config.c_theorem * out.N;
  out.phi_bound_order = std::pow(config.c_theorem * out.N, 2.0 * k * k) / out.y0;
  out.phi_within_bound = std::abs(out.phi) <= out.phi_bound;
  out.phi_within_order_bound = std::abs(out.phi) <= out.phi_bound_order;
  out.vacuous = !(out.x_in_range && out.lemma_hypothesis_ok && out.N <= std::pow(out.y0, 0.01));

  zeros::DiskAuditConfig disk_config;
  disk_config.c = config.c_theorem;
  for (double L : L_grid) {
    DiskRow row;
    row.L = L;
    row.threshold_360 = zeros::threshold_360(L);
    row.threshold_400 = zeros::threshold_400(L);
    try {
      row.audit = zeros::disk_count_audit(chi, x, L, disk_config);
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace charzero::harness
