// Acceptance runner: `charzero_acceptance <n>` checks criterion n (1..9), or all when no
// argument is given, and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/harness.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/multfn.hpp"
#include "charzero/parallel.hpp"
#include "charzero/plancherel.hpp"
#include "charzero/primes.hpp"
#include "charzero/report.hpp"
#include "charzero/spectral.hpp"
#include "charzero/zeros.hpp"

namespace {

using namespace charzero;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<dirichlet::Character> nonprincipal_primitive(std::uint64_t q_lo, std::uint64_t q_hi) {
  std::vector<dirichlet::Character> out;
  for (std::uint64_t q = q_lo; q <= q_hi; ++q) {
    for (auto& chi : dirichlet::primitive_characters(q)) {
      if (!chi.is_principal()) out.push_back(std::move(chi));
    }
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  Outcome o;
  std::vector<plancherel::PlancherelCase> cases;
  for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 11u}) {
    for (const auto& chi : nonprincipal_primitive(q, q)) {
      for (double lambda : {0.0, 0.1, 0.25, 0.5}) {
        for (double T : {0.25, 1.0, 4.0}) {
          for (double phi : {0.0, 0.3, -1.7}) cases.push_back({chi, phi, lambda, T});
        }
      }
    }
  }
  std::vector<double> residual(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { residual[i] = plancherel::plancherel_identity(cases[i]).residual; });
  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, r);
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-6, "relative residual " + fmt("%.3g", worst) + " > 1e-6");
  o.require(secs <= 120.0, "runtime " + fmt("%.1f", secs) + " s > 120 s");
  o.note(std::to_string(cases.size()) + " cases, worst residual " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) +
         " s");
  return o;
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto c = spectral::delta_constants();
  const double secs = seconds_since(t0);
  o.require(std::abs(c.delta0 - 0.1715) <= 1e-4, "delta0 = " + fmt("%.12g", c.delta0));
  o.require(std::abs(c.delta1 - (-0.656999)) <= 1e-5, "delta1 = " + fmt("%.12g", c.delta1));
  const double rel = std::abs(c.delta1 - (2.0 * c.delta0 - 1.0));
  o.require(rel <= 1e-12, "|delta1 - (2 delta0 - 1)| = " + fmt("%.3g", rel));
  o.require(secs < 1.0, "runtime " + fmt("%.2f", secs) + " s");
  o.note("delta0 " + fmt("%.15g", c.delta0) + ", delta1 " + fmt("%.15g", c.delta1) + ", relation gap " +
         fmt("%.2g", rel));
  return o;
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto zs = spectral::find_H_zeros(50);
  for (const auto& z : zs) {
    if (z.k > 20) break;
    o.require(z.residual <= 1e-10, "k=" + std::to_string(z.k) + " residual " + fmt("%.3g", z.residual));
    o.require(z.z.real() < 0.0, "k=" + std::to_string(z.k) + " Re z >= 0");
    o.require(z.winding == 1, "k=" + std::to_string(z.k) + " winding " + std::to_string(z.winding));
  }
  const double gap10 = zs[9].asymptotic_gap;
  o.require(gap10 <= 0.1, "asymptotic gap at k=10 is " + fmt("%.4f", gap10) + " > 0.1");
  // Envelope: means over blocks of ten are nonincreasing, and every gap from
  // k = 20 on stays below the gap at k = 5.
  std::vector<double> block_mean(5, 0.0);
  for (const auto& z : zs) block_mean[static_cast<std::size_t>((z.k - 1) / 10)] += z.asymptotic_gap / 10.0;
  for (std::size_t b = 1; b < block_mean.size(); ++b) {
    o.require(block_mean[b] <= block_mean[b - 1], "block mean increases at block " + std::to_string(b + 1));
  }
  for (const auto& z : zs) {
    if (z.k >= 20) o.require(z.asymptotic_gap <= zs[4].asymptotic_gap, "gap at k=" + std::to_string(z.k) + " exceeds gap at k=5");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "runtime " + fmt("%.2f", secs) + " s");
  o.note("gap(10) " + fmt("%.4f", gap10) + ", gap(20) " + fmt("%.4f", zs[19].asymptotic_gap) + ", gap(50) " +
         fmt("%.4f", zs[49].asymptotic_gap) + ", " + fmt("%.2f", secs) + " s");
  return o;
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto chars = nonprincipal_primitive(3, 50);
  const auto rect = zeros::Region::rectangle(0.0, 1.0, 0.0, 20.0);
  struct Row {
    int located = 0;
    int winding = 0;
    double worst_beta = 0.0;
    std::string error;
  };
  std::vector<Row> rows(chars.size());
  parallel_for(chars.size(), [&](std::size_t i) {
    try {
      const auto zs = zeros::locate_zeros(chars[i], rect);
      rows[i].located = static_cast<int>(zs.size());
      rows[i].winding = zeros::count_zeros_argument_principle(chars[i], rect);
      for (const auto& z : zs) {
        if (std::abs(z.gamma) <= 5.0) rows[i].worst_beta = std::max(rows[i].worst_beta, std::abs(z.beta - 0.5));
      }
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  double worst_beta = 0.0;
  int mismatches = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty()) {
      o.require(false, std::to_string(chars[i].modulus()) + "." + std::to_string(chars[i].conrey_label()) + ": " +
                           rows[i].error);
      continue;
    }
    mismatches += rows[i].located != rows[i].winding ? 1 : 0;
    worst_beta = std::max(worst_beta, rows[i].worst_beta);
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " count mismatches");
  o.require(worst_beta <= 1e-6, "max |beta - 1/2| for |gamma| <= 5 is " + fmt("%.3g", worst_beta));
  const auto first = zeros::locate_zeros(dirichlet::character(4, 3), rect);
  o.require(!first.empty() && std::abs(first.front().beta - 0.5) <= 1e-6, "first zero of chi mod 4 off the line");
  const double secs = seconds_since(t0);
  o.require(secs <= 300.0, "runtime " + fmt("%.1f", secs) + " s");
  o.note(std::to_string(chars.size()) + " characters, max |beta - 1/2| " + fmt("%.2g", worst_beta) +
         ", first zero chi mod 4 at " + (first.empty() ? std::string("-") : fmt("%.10f", first.front().gamma)) + ", " +
         fmt("%.1f", secs) + " s");
  return o;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto chars = nonprincipal_primitive(3, 100);
  struct Row {
    int series_failures = 0;
    int fe_failures = 0;
    double worst_fe = 0.0;
  };
  std::vector<Row> rows(chars.size());
  parallel_for(chars.size(), [&](std::size_t i) {
    const auto& chi = chars[i];
    for (cplx s : {cplx(2.0, 0.0), cplx(2.0, 17.0), cplx(3.0, -35.0), cplx(2.5, 48.0)}) {
      const auto l = lfunction::L_value(chi, s);
      const auto d = lfunction::dirichlet_series(chi, s, 20000);
      if (!(std::abs(l.value - d.value) <= l.err_bound + d.err_bound)) ++rows[i].series_failures;
    }
    if (!chi.is_primitive()) return;
    const lfunction::XiEvaluator xi(chi);
    std::mt19937_64 rng(chi.modulus() * 1000003u + chi.conrey_label());
    std::uniform_real_distribution<double> sigma(-0.5, 1.5);
    std::uniform_real_distribution<double> t(-30.0, 30.0);
    for (int k = 0; k < 100; ++k) {
      const cplx s(sigma(rng), t(rng));
      const double a = std::abs(xi(s));
      const double b = std::abs(xi(1.0 - std::conj(s)));
      const double rel = std::abs(a - b) / std::max(a, b);
      rows[i].worst_fe = std::max(rows[i].worst_fe, rel);
      if (!(rel <= 1e-8)) ++rows[i].fe_failures;
    }
  });
  int series = 0;
  int fe = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    series += r.series_failures;
    fe += r.fe_failures;
    worst = std::max(worst, r.worst_fe);
  }
  const double secs = seconds_since(t0);
  o.require(series == 0, std::to_string(series) + " Hurwitz/series disagreements");
  o.require(fe == 0, std::to_string(fe) + " functional-equation failures");
  o.require(secs <= 120.0, "runtime " + fmt("%.1f", secs) + " s");
  o.note(std::to_string(chars.size()) + " characters, worst relative |xi| gap " + fmt("%.2g", worst) + ", " +
         fmt("%.1f", secs) + " s");
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> alpha(-3.0, 3.0);
  const std::uint64_t X = 10000;
  auto random_function = [&](int kind) {
    switch (kind) {
      case 0:
        return multfn::random_pm(rng(), X);
      case 1:
        return multfn::n_to_i(alpha(rng), X);
      default: {
        const std::uint64_t q = 3 + rng() % 60;
        const auto chars = dirichlet::enumerate_characters(q);
        return multfn::from_character(q, chars[rng() % chars.size()].conrey_label(), X);
      }
    }
  };
  int violations = 0;
  double worst_slack = -1e300;
  for (int i = 0; i < 1000; ++i) {
    const auto f = random_function(i % 3);
    const auto g = random_function((i / 3) % 3);
    const auto h = random_function((i / 9) % 3);
    const double dfg = std::sqrt(multfn::distance_sq(f, g, X));
    const double dgh = std::sqrt(multfn::distance_sq(g, h, X));
    const double dfh = std::sqrt(multfn::distance_sq(f, h, X));
    worst_slack = std::max(worst_slack, dfh - dfg - dgh);
    if (dfh > dfg + dgh + 1e-12) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " triangle violations");

  double worst_window = 0.0;
  for (double x : {1e4, 1e5, 1e6}) {
    const auto limit = static_cast<std::uint64_t>(x);
    std::vector<multfn::CMF> corpus;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) corpus.push_back(multfn::random_pm(seed, limit));
    corpus.push_back(multfn::from_character(5, 2, limit));
    corpus.push_back(multfn::from_character(7, 3, limit));
    corpus.push_back(multfn::constant_one(limit));
    corpus.push_back(multfn::n_to_i(1.0, limit));
    for (const auto& f : corpus) {
      for (double t : {-5.0, -1.0, 0.0, 0.5, 2.0}) {
        const double lhs = multfn::log_abs_euler_product(f, x, {1.0 + 1.0 / std::log(x), t});
        const double rhs = std::log(std::log(x)) - multfn::distance_sq(f, multfn::n_to_i(t, limit), x);
        worst_window = std::max(worst_window, std::abs(lhs - rhs));
      }
    }
  }
  o.require(worst_window <= 2.0, "log-window deviation " + fmt("%.3f", worst_window) + " > 2");

  const double hand = multfn::distance_sq(multfn::constant_one(10), multfn::from_character(5, 4, 10), 10);
  const double expected = 1.0 + 2.0 / 3.0 + 1.0 / 5.0 + 2.0 / 7.0;
  o.require(std::abs(hand - expected) <= 1e-12, "hand value " + fmt("%.17g", hand));

  const auto hb = multfn::halasz_bound(multfn::n_to_i(1.0, 1000000), 1e6);
  o.require(std::abs(hb.ratio - 1.41) <= 0.05, "Halasz ratio " + fmt("%.4f", hb.ratio));
  o.note("max triangle slack " + fmt("%.2g", worst_slack) + ", log-window " + fmt("%.3f", worst_window) +
         ", hand value gap " + fmt("%.2g", std::abs(hand - expected)) + ", Halasz ratio " + fmt("%.4f", hb.ratio));
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::string gaps;
  for (double lambda : {0.05, 0.1, 0.25, 0.5}) {
    const auto v = primes::von_mangoldt_series(1.0 + lambda, 2000000);
    const double gap = v.value() - 1.0 / lambda;
    o.require(std::abs(gap) <= 1.0, "von Mangoldt gap " + fmt("%.4f", gap) + " at lambda " + fmt("%g", lambda));
    gaps += (gaps.empty() ? "" : " ") + fmt("%.4f", gap);
  }
  const auto chi = dirichlet::character(4, 3);
  const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, -50.0, 50.0));
  const auto h = zeros::hadamard_ratio_check(chi, 0.25, 0.0, zs, 50.0);
  o.require(h.log_gap <= 2.0, "log_gap " + fmt("%.4f", h.log_gap));
  o.require(h.coverage_ok, "zero coverage insufficient");
  o.note("von Mangoldt gaps [" + gaps + "], log_gap " + fmt("%.4f", h.log_gap) + " with " +
         std::to_string(h.zeros_used) + " zeros");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto ps = harness::census_primes(10000, 100000, 20);
  int out_of_band = 0;
  int below_bound = 0;
  double lo = 1.0;
  double hi = 0.0;
  for (auto q : ps) {
    const auto r = harness::nonresidue_census(q, 1.0);
    lo = std::min(lo, r.fraction);
    hi = std::max(hi, r.fraction);
    if (r.fraction < 0.4 || r.fraction > 0.6) ++out_of_band;
    if (!r.exceeds_bound) ++below_bound;
    o.require(harness::nonresidue_count(q, static_cast<double>(q)) == (q - 1) / 2,
              "full-period count wrong for q=" + std::to_string(q));
  }
  o.require(out_of_band == 0, std::to_string(out_of_band) + " of 20 fractions outside [0.4, 0.6]");
  o.require(below_bound == 0, std::to_string(below_bound) + " of 20 counts below the bound");
  o.note("fractions in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "] at x = q^{1/4}");
  return o;
}

Outcome criterion9() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto expected_rows = nonprincipal_primitive(3, 101).size();
  int nonvacuous = 0;
  for (auto rule : {harness::BudgetRule::Cor4, harness::BudgetRule::Cor3}) {
    harness::ScenarioConfig c;
    c.q_min = 3;
    c.q_max = 101;
    c.budget = rule;
    const auto report = harness::corollary_zero_budget_audit(c);
    const std::string name(harness::to_string(rule));
    o.require(report.rows.size() == expected_rows, name + ": row count " + std::to_string(report.rows.size()));
    const auto j = nlohmann::ordered_json::parse(report::audit_json(report));
    o.require(j.at("rows").size() == expected_rows, name + ": JSON row count");
    o.require(j.at("config").at("constants").size() == c.constants().size(), name + ": constants not echoed");
    for (const auto& row : j.at("rows")) {
      const bool gated = row.at("hypothesis_ok").get<bool>() && !row.at("vacuous").get<bool>();
      o.require(gated == !row.at("conclusion_ok").is_null(), name + ": conclusion_ok set outside its gate");
      nonvacuous += row.at("vacuous").get<bool>() ? 0 : 1;
    }
    const auto csv = report::audit_csv(report);
    std::size_t lines = 0;
    for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++lines;
    o.require(lines == expected_rows + 1, name + ": CSV line count");
  }
  const auto m = harness::main_theorem_experiment(101, 100, 10.0, {1.0, 10.0, 360.0, 400.0});
  const auto mj = nlohmann::ordered_json::parse(report::main_theorem_json(m));
  o.require(mj.at("rows").size() == 4, "main-theorem rows");
  o.require(m.vacuous, "main-theorem experiment not flagged vacuous at q = 101");
  const double secs = seconds_since(t0);
  o.note(std::to_string(expected_rows) + " rows per rule, " + std::to_string(nonvacuous) +
         " non-vacuous rows, main-theorem x-range [" + fmt("%.3f", m.x_range_lo) + ", " + fmt("%.3f", m.x_range_hi) +
         "], " + fmt("%.1f", secs) + " s");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  }
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
