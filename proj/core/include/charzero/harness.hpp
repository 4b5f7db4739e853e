#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charzero/multfn.hpp"
#include "charzero/numeric.hpp"
#include "charzero/zeros.hpp"

namespace charzero::harness {

/// Zero budget eps^2 log q / 1600 (cor4) or eps^2 log q / 1440 (cor3).
enum class BudgetRule { Cor4, Cor3 };

std::string_view to_string(BudgetRule rule);

struct ScenarioConfig {
  std::uint64_t q_min = 3;
  std::uint64_t q_max = 101;
  double epsilon = 0.9;
  double T = 1.0;
  BudgetRule budget = BudgetRule::Cor4;

  /// Absolute constant in the hypothesis ranges L >= c N^6 / (c N)^{2k^2}.
  double c_theorem = 1.0;
  /// Zero-free region: Re s >= 1 - c / (eps^8 log q), |Im s| <= c / eps.
  double c_region = 1.0;
  /// Implied constant used when a "<<" conclusion is checked.
  double c_conclusion = 1.0;
  /// xi = c eta^6 for product searches; c' in y >= x^{c' eta^{2k^2}} for powers.
  double c_xi = 1.0;
  /// Additive constant in lambda = M + log(1 + |phi|) + c for witness searches.
  double c_witness = 3.0;
  /// Zero density per unit height, c log(q (2 + |t|)).
  double c_density = 1.0 / kPi;
  /// Slack for the Halasz-type empirical checks.
  double halasz_slack = 20.0;
  std::uint64_t seed = 0x5eed;

  /// Every tunable constant in a fixed order; echoed into each report.
  std::vector<std::pair<std::string, double>> constants() const;
  /// Sets one key (accepted keys are the names listed by constants() plus
  /// q_min, q_max, epsilon, T, budget and seed). Throws DomainError otherwise.
  void set(std::string_view key, std::string_view value);
};

/// Parses `key = value` lines; `#` starts a comment, `[section]` prefixes
/// keys with "section.", values may be double-quoted.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

/// Reads a key=value file into a config (section prefixes are ignored).
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});

struct AuditRow {
  std::uint64_t q = 0;
  std::uint64_t conrey = 0;
  std::uint64_t order = 0;
  double epsilon = 0.0;
  double x = 0.0;
  /// eps^2 log q / 1600 or / 1440.
  double budget = 0.0;
  /// Zeros in Re s >= 3/4, |Im s| <= 1/4 (cor4) or the maximum over windows
  /// |Im s - phi| <= 1/4, |phi| <= T (cor3).
  int zero_count = 0;
  double abs_S = 0.0;
  /// x / (log x)^{1/100} (cor4) or x / T (cor3).
  double predicted_bound = 0.0;
  double ratio = 0.0;
  bool hypothesis_ok = false;
  bool vacuous = true;
  /// Set only when the hypothesis holds and the range is non-vacuous.
  std::optional<bool> conclusion_ok;
  /// Zero-free region columns, the region clipped to the critical strip.
  double region_sigma_min = 0.0;
  double region_t_max = 0.0;
  bool region_hypothesis_ok = false;
  int region_zero_count = 0;
};

struct AuditReport {
  std::string version;
  BudgetRule rule = BudgetRule::Cor4;
  ScenarioConfig config;
  std::vector<AuditRow> rows;
};

/// One row per primitive non-principal character with q_min <= q <= q_max,
/// ascending q then Conrey label.
AuditReport corollary_zero_budget_audit(const ScenarioConfig& config);

/// Legendre symbol (a | p) for an odd prime p.
int legendre_symbol(std::uint64_t a, std::uint64_t p);

/// Quadratic non-residues n <= x modulo the prime q.
std::uint64_t nonresidue_count(std::uint64_t q, double x);

struct CensusResult {
  std::uint64_t q = 0;
  double u = 0.0;
  double x = 0.0;
  std::uint64_t count = 0;
  /// min(delta0, 1/4 - (log u)^2) x.
  double bound = 0.0;
  double fraction = 0.0;
  bool exceeds_bound = false;
};

/// x = q^{u/4}; q must be prime and u in [e^{-1/2}, 1].
CensusResult nonresidue_census(std::uint64_t q, double u);

/// `count` primes from [lo, hi] taken at evenly spaced positions of the sorted prime list.
std::vector<std::uint64_t> census_primes(std::uint64_t lo, std::uint64_t hi, std::size_t count);

struct ProductSearch {
  bool hypothesis_ok = false;
  cplx mean1;
  cplx mean2;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi = 0.0;
  double x_min = 0.0;
  multfn::Prop61Witness witness;
  /// c eta^6.
  double xi_report = 0.0;
  /// witness.y >= x_min^xi and |witness.mean| >= xi.
  bool exponent_ok = false;
  bool mean_ok = false;
};

/// Requires |mean of f_j to x_j| >= eta (else report-only), then searches f1 f2 at min(x1, x2).
ProductSearch product_large_sum_search(const multfn::CMF& f1, const multfn::CMF& f2, double x1, double x2,
                                       double eta, const ScenarioConfig& config = {});

struct PowerSearch {
  bool hypothesis_ok = false;
  cplx mean;
  int k = 1;
  multfn::Prop61Witness witness;
  /// x^{c eta^{2k^2}}.
  double y_target = 0.0;
  bool y_ok = false;
};

PowerSearch power_large_sum_search(const multfn::CMF& f, double x, double eta, int k,
                                   const ScenarioConfig& config = {});

struct DiskRow {
  double L = 0.0;
  int threshold_360 = 0;
  int threshold_400 = 0;
  std::optional<zeros::DiskAudit> audit;
  std::string error;
};

struct MainTheoremReport {
  std::string version;
  std::uint64_t q = 0;
  std::uint64_t conrey = 0;
  std::uint64_t order = 0;
  double x = 0.0;
  /// exp(sqrt(log q)) <= x <= sqrt(q).
  double x_range_lo = 0.0;
  double x_range_hi = 0.0;
  bool x_range_nonempty = false;
  bool x_in_range = false;
  double y0 = 0.0;
  double abs_S = 0.0;
  double N = 0.0;
  /// y0 >= 3 and |S(e^{y0})| >= e^{y0} y0^{-1/100}.
  bool lemma_hypothesis_ok = false;
  double phi = 0.0;
  double M = 0.0;
  /// c e^{y0} / |S| and (1/y0) (c e^{y0} / |S|)^{2k^2}.
  double phi_bound = 0.0;
  double phi_bound_order = 0.0;
  bool phi_within_bound = false;
  bool phi_within_order_bound = false;
  bool vacuous = true;
  ScenarioConfig config;
  std::vector<DiskRow> rows;
};

MainTheoremReport main_theorem_experiment(std::uint64_t q, std::uint64_t conrey, double x,
                                          const std::vector<double>& L_grid, const ScenarioConfig& config = {});

}  // namespace charzero::harness
