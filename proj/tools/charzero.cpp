#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <optional>
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
#include "charzero/report.hpp"
#include "charzero/spectral.hpp"
#include "charzero/version.hpp"
#include "charzero/zeros.hpp"

namespace {

using namespace charzero;
using Json = nlohmann::ordered_json;

struct Globals {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

enum class Format { Csv, Json };

Format format_for(const Globals& g, Format fallback) {
  if (g.out.empty()) return fallback;
  return g.out == "csv" ? Format::Csv : Format::Json;
}

harness::ScenarioConfig base_config(const Globals& g) {
  harness::ScenarioConfig config;
  if (!g.config_path.empty()) config = harness::load_config(g.config_path, config);
  if (g.seed) config.seed = *g.seed;
  return config;
}

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::string scalar_field(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return report::format_double(v.get<double>());
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, keys, values);
    } else {
      keys.push_back(name);
      values.push_back(value.is_array() ? value.dump() : scalar_field(value));
    }
  }
}

/// JSON as-is, or a one-row CSV with nested keys joined by '.'.
void emit(const Json& j, Format format) {
  if (format == Format::Json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::vector<std::string> keys;
  std::vector<std::string> values;
  flatten(j, "", keys, values);
  report::CsvTable table(keys);
  table.add_row(values);
  std::cout << table.str();
}

/// Accepts `randpm` without a seed and fills in the global one.
multfn::CMF function_from_spec(std::string spec, std::uint64_t limit, std::uint64_t seed) {
  if (spec == "randpm") spec += ":" + std::to_string(seed);
  return multfn::parse_function(spec, limit);
}

std::uint64_t limit_for(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

std::vector<double> parse_list(const std::string& text, std::size_t expected = 0) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  if (expected != 0 && out.size() != expected) {
    throw DomainError("expected " + std::to_string(expected) + " comma-separated values: " + text);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet character sums, L-function zeros and related numerics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed for random functions");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)");

  std::uint64_t q = 0;
  std::uint64_t conrey = 1;
  double x = 0.0;
  double phi = 0.0;

  // chars
  auto* chars = app.add_subcommand("chars", "List the Dirichlet characters modulo q");
  bool primitive_only = false;
  chars->add_option("--q", q, "Modulus")->required()->check(CLI::PositiveNumber);
  chars->add_flag("--primitive-only", primitive_only, "Only primitive characters");

  // sum
  auto* sum = app.add_subcommand("sum", "Partial character sum S(x, chi) and its twist");
  sum->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  sum->add_option("--conrey", conrey)->required();
  sum->add_option("--x", x)->required();
  sum->add_option("--phi", phi, "Twist n^{-i phi}");

  // distance
  auto* distance = app.add_subcommand("distance", "Squared pretentious distance D(f, g; x)^2");
  std::string f_spec = "one";
  std::string g_spec = "one";
  distance->add_option("--f", f_spec, "one | ntoi:<a> | char:<q>.<conrey> | randpm[:<seed>]")->required();
  distance->add_option("--g", g_spec)->required();
  distance->add_option("--x", x)->required();

  // halasz
  auto* halasz = app.add_subcommand("halasz", "Halasz data (phi, M) and the mean-value bound");
  halasz->add_option("--q", q);
  halasz->add_option("--conrey", conrey);
  halasz->add_option("--f", f_spec, "Function spec (instead of --q/--conrey)");
  halasz->add_option("--x", x)->required();

  // lvalue
  auto* lvalue = app.add_subcommand("lvalue", "L(s, chi) with a rigorous error bound");
  double re = 0.0;
  double im = 0.0;
  lvalue->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  lvalue->add_option("--conrey", conrey)->required();
  lvalue->add_option("--re", re)->required();
  lvalue->add_option("--im", im);

  // zeros
  auto* zeros_cmd = app.add_subcommand("zeros", "Locate zeros of L(s, chi) in a rectangle");
  std::string rect = "0,1,0,30";
  zeros_cmd->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  zeros_cmd->add_option("--conrey", conrey)->required();
  zeros_cmd->add_option("--rect", rect, "sigma1,sigma2,t1,t2");

  // audit-disk
  auto* audit_disk = app.add_subcommand("audit-disk", "Zero count in the disk around 1 + i phi");
  double L = 0.0;
  audit_disk->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  audit_disk->add_option("--conrey", conrey)->required();
  audit_disk->add_option("--x", x)->required();
  audit_disk->add_option("--L", L)->required();

  // plancherel
  auto* planch = app.add_subcommand("plancherel", "Both sides of the Gaussian-weighted Plancherel identity");
  double lambda = 0.1;
  double T = 1.0;
  planch->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  planch->add_option("--conrey", conrey)->required();
  planch->add_option("--phi", phi);
  planch->add_option("--lambda", lambda);
  planch->add_option("--T", T);

  // hzeros
  auto* hzeros = app.add_subcommand("hzeros", "Zeros of the kernel H(z)");
  int count = 20;
  hzeros->add_option("--count", count)->check(CLI::Range(0, 200));

  // constants
  auto* constants = app.add_subcommand("constants", "The constants delta0 and delta1");

  // bound
  auto* bound = app.add_subcommand("bound", "Spectrum bound for +-1 multiplicative functions");
  std::string mode = "prop71";
  double arg = 1.0;
  bound->add_option("--mode", mode)->check(CLI::IsMember({"prop71", "cor18"}));
  auto* alpha_opt = bound->add_option("--alpha", arg, "Argument for prop71");
  bound->add_option("--u", arg, "Argument for cor18")->excludes(alpha_opt);

  // census
  auto* census = app.add_subcommand("census", "Quadratic non-residue counts up to q^{u/4}");
  std::vector<std::uint64_t> census_q;
  std::string range;
  std::size_t census_count = 20;
  double u = 1.0;
  census->add_option("--q", census_q, "Prime moduli");
  census->add_option("--range", range, "lo,hi: evenly spaced primes from this range");
  census->add_option("--count", census_count, "Number of primes taken from --range");
  census->add_option("--u", u);

  // product-search
  auto* product = app.add_subcommand("product-search", "Large mean value of f1 f2 or of f^k");
  std::string f1_spec;
  std::string f2_spec;
  double x1 = 0.0;
  double x2 = 0.0;
  double eta = 0.5;
  int k = 0;
  product->add_option("--f1", f1_spec)->required();
  product->add_option("--f2", f2_spec);
  product->add_option("--x1", x1)->required();
  product->add_option("--x2", x2);
  product->add_option("--eta", eta);
  product->add_option("--k", k, "Power search on f1^k instead of a product");

  // audit-corollary
  auto* audit = app.add_subcommand("audit-corollary", "Zero-budget audit over a modulus range");
  std::optional<std::uint64_t> q_min;
  std::optional<std::uint64_t> q_max;
  std::optional<double> epsilon;
  std::optional<double> audit_T;
  std::optional<std::string> budget;
  bool main_mode = false;
  std::string L_grid = "1,10,100,1000";
  audit->add_option("--q-min", q_min);
  audit->add_option("--q-max", q_max);
  audit->add_option("--epsilon", epsilon);
  audit->add_option("--T", audit_T);
  audit->add_option("--budget", budget)->check(CLI::IsMember({"cor4", "cor3"}));
  audit->add_flag("--main", main_mode, "Single-character disk audit over an L grid (uses --q, --conrey, --x)");
  audit->add_option("--q", q);
  audit->add_option("--conrey", conrey);
  audit->add_option("--x", x);
  audit->add_option("--L", L_grid, "Comma-separated L grid for --main");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.threads > 0) set_thread_count(g.threads);
    harness::ScenarioConfig config = base_config(g);

    if (chars->parsed()) {
      const auto list = primitive_only ? dirichlet::primitive_characters(q) : dirichlet::enumerate_characters(q);
      std::cout << (format_for(g, Format::Csv) == Format::Csv ? report::characters_csv(list)
                                                              : report::characters_json(list));
    } else if (sum->parsed()) {
      const auto chi = dirichlet::character(q, conrey);
      const auto s = dirichlet::twisted_partial_sum(chi, phi, x);
      emit(Json{{"q", q},
                {"conrey", conrey},
                {"x", x},
                {"phi", phi},
                {"value", complex_json(s.value)},
                {"abs", std::abs(s.value)},
                {"N", s.N ? Json(*s.N) : Json(nullptr)}},
           format_for(g, Format::Json));
    } else if (distance->parsed()) {
      const auto f = function_from_spec(f_spec, limit_for(x), config.seed);
      const auto h = function_from_spec(g_spec, limit_for(x), config.seed);
      const double d2 = multfn::distance_sq(f, h, x);
      emit(Json{{"f", f.name()}, {"g", h.name()}, {"x", x}, {"distance_sq", d2}, {"distance", std::sqrt(d2)}},
           format_for(g, Format::Json));
    } else if (halasz->parsed()) {
      const std::string spec = q > 0 ? "char:" + std::to_string(q) + "." + std::to_string(conrey) : f_spec;
      const auto f = function_from_spec(spec, limit_for(x), config.seed);
      const auto hb = multfn::halasz_bound(f, x);
      emit(Json{{"f", f.name()},
                {"x", x},
                {"phi", hb.phi},
                {"M", hb.M},
                {"observed", hb.observed},
                {"main_term", hb.main_term},
                {"bound", hb.bound},
                {"ratio", hb.ratio},
                {"bound_ratio", hb.bound_ratio}},
           format_for(g, Format::Json));
    } else if (lvalue->parsed()) {
      const auto chi = dirichlet::character(q, conrey);
      const auto v = lfunction::L_value(chi, {re, im});
      emit(Json{{"q", q},
                {"conrey", conrey},
                {"s", complex_json({re, im})},
                {"re", v.value.real()},
                {"im", v.value.imag()},
                {"err_bound", v.err_bound}},
           format_for(g, Format::Json));
    } else if (zeros_cmd->parsed()) {
      const auto r = parse_list(rect, 4);
      const auto chi = dirichlet::character(q, conrey);
      const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(r[0], r[1], r[2], r[3]));
      if (format_for(g, Format::Csv) == Format::Csv) {
        std::cout << report::zeros_csv(zs);
      } else {
        Json arr = Json::array();
        for (const auto& z : zs) {
          arr.push_back(Json{{"beta", z.beta},
                             {"gamma", z.gamma},
                             {"residual", z.residual},
                             {"method", std::string(to_string(z.method))}});
        }
        std::cout << Json{{"version", std::string(kVersion)}, {"q", q}, {"conrey", conrey}, {"zeros", arr}}.dump(2)
                  << "\n";
      }
    } else if (audit_disk->parsed()) {
      const auto chi = dirichlet::character(q, conrey);
      zeros::DiskAuditConfig disk_config;
      disk_config.c = config.c_theorem;
      const auto a = zeros::disk_count_audit(chi, x, L, disk_config);
      const Format format = format_for(g, Format::Json);
      if (format == Format::Json) {
        std::cout << report::disk_audit_json(a);
      } else {
        emit(Json::parse(report::disk_audit_json(a)), format);
      }
    } else if (planch->parsed()) {
      plancherel::PlancherelCase c{dirichlet::character(q, conrey), phi, lambda, T};
      const auto r = plancherel::plancherel_identity(c);
      emit(Json{{"q", q},
                {"conrey", conrey},
                {"phi", phi},
                {"lambda", lambda},
                {"T", T},
                {"lhs", complex_json(r.lhs.value)},
                {"rhs", complex_json(r.rhs.value)},
                {"residual", r.residual},
                {"lhs_err_bound", r.lhs.err_bound},
                {"rhs_err_bound", r.rhs.err_bound},
                {"n_max", r.lhs.n_max},
                {"xi_max", r.rhs.xi_max}},
           format_for(g, Format::Json));
    } else if (hzeros->parsed()) {
      const auto zs = spectral::find_H_zeros(count);
      if (format_for(g, Format::Csv) == Format::Csv) {
        std::cout << report::hzeros_csv(zs);
      } else {
        Json arr = Json::array();
        for (const auto& z : zs) {
          arr.push_back(Json{{"k", z.k},
                             {"re", z.z.real()},
                             {"im", z.z.imag()},
                             {"residual", z.residual},
                             {"gap", z.asymptotic_gap},
                             {"winding", z.winding},
                             {"grid_fallback", z.grid_fallback}});
        }
        std::cout << Json{{"version", std::string(kVersion)}, {"zeros", arr}}.dump(2) << "\n";
      }
    } else if (constants->parsed()) {
      const auto c = spectral::delta_constants();
      emit(Json{{"integral", c.integral},
                {"integral_err", c.integral_err},
                {"delta0", c.delta0},
                {"delta0_err", c.delta0_err},
                {"delta1", c.delta1},
                {"delta1_err", c.delta1_err}},
           format_for(g, Format::Json));
    } else if (bound->parsed()) {
      const auto m = mode == "prop71" ? spectral::BoundMode::Prop71 : spectral::BoundMode::Cor18;
      emit(Json{{"mode", mode}, {"arg", arg}, {"bound", spectral::spectrum_bound(m, arg)}}, format_for(g, Format::Json));
    } else if (census->parsed()) {
      std::vector<std::uint64_t> ps = census_q;
      if (!range.empty()) {
        const auto r = parse_list(range, 2);
        const auto picked = harness::census_primes(static_cast<std::uint64_t>(r[0]), static_cast<std::uint64_t>(r[1]),
                                                   census_count);
        ps.insert(ps.end(), picked.begin(), picked.end());
      }
      if (ps.empty()) throw DomainError("census: give --q or --range");
      std::vector<harness::CensusResult> rows;
      for (auto p : ps) rows.push_back(harness::nonresidue_census(p, u));
      std::cout << (format_for(g, Format::Csv) == Format::Csv ? report::census_csv(rows) : report::census_json(rows));
    } else if (product->parsed()) {
      const Format format = format_for(g, Format::Json);
      std::string text;
      if (k > 0) {
        const auto f = function_from_spec(f1_spec, limit_for(x1), config.seed);
        text = report::power_search_json(harness::power_large_sum_search(f, x1, eta, k, config), config);
      } else {
        if (f2_spec.empty() || x2 <= 0.0) throw DomainError("product-search: --f2 and --x2 are required without --k");
        const auto f1 = function_from_spec(f1_spec, limit_for(std::max(x1, x2)), config.seed);
        const auto f2 = function_from_spec(f2_spec, limit_for(std::max(x1, x2)), config.seed);
        text = report::product_search_json(harness::product_large_sum_search(f1, f2, x1, x2, eta, config), config);
      }
      if (format == Format::Json) {
        std::cout << text;
      } else {
        emit(Json::parse(text), format);
      }
    } else if (audit->parsed()) {
      if (q_min) config.q_min = *q_min;
      if (q_max) config.q_max = *q_max;
      if (epsilon) config.epsilon = *epsilon;
      if (audit_T) config.T = *audit_T;
      if (budget) config.set("budget", *budget);
      if (main_mode) {
        if (q == 0 || x <= 0.0) throw DomainError("audit-corollary --main: --q, --conrey and --x are required");
        const auto r = harness::main_theorem_experiment(q, conrey, x, parse_list(L_grid), config);
        std::cout << report::main_theorem_json(r);
      } else {
        const auto r = harness::corollary_zero_budget_audit(config);
        std::cout << (format_for(g, Format::Json) == Format::Csv ? report::audit_csv(r) : report::audit_json(r));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
